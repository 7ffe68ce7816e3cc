#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "chaoscalc/chaos_vector.hpp"

namespace chaoscalc {

/// Standard normal coordinates xi_i = <omega, 1_i / sqrt(step)>, one per cell.
class NoiseVector {
 public:
  NoiseVector(const Grid& grid, std::vector<double> xi);

  const Grid& grid() const noexcept { return grid_; }
  const std::vector<double>& xi() const noexcept { return xi_; }
  /// Delta B_i = sqrt(step) * xi_i.
  double increment(CellIndex i) const;
  /// B at the left edge of cell p, i.e. the sum of the first p increments.
  double brownian(std::size_t p) const;

 private:
  Grid grid_;
  std::vector<double> xi_;
  std::vector<double> partial_;
};

/// Path `path` of the stream identified by seed; independent across paths.
NoiseVector sample_noise(const Grid& grid, std::uint64_t seed, std::uint64_t path = 0);

/// Pathwise value of the chaos vector: I_n of a step kernel is a sum of
/// products of Hermite polynomials He_a(xi_i), scaled by step^{n/2}.
double evaluate(const ChaosVector& phi, const NoiseVector& omega);

/// Forward sum sum_s Phi(s)(omega) Delta B_s. Throws std::invalid_argument
/// unless every Phi(s) is supported on cells strictly below s.
double ito_oracle(const ChaosProcess& adapted, const NoiseVector& omega);

struct MomentEstimate {
  std::size_t samples = 0;
  double mean = 0.0;
  double variance = 0.0;
  double se_mean = 0.0;
  /// Jackknife standard error of the variance.
  double se_variance = 0.0;
};

/// Moments of f(omega) over n_samples paths; threads only changes speed.
MomentEstimate mc_moments(const std::function<double(const NoiseVector&)>& f, const Grid& grid,
                          std::size_t n_samples, std::uint64_t seed, unsigned threads = 1);
MomentEstimate mc_moments(const ChaosVector& phi, std::size_t n_samples, std::uint64_t seed, unsigned threads = 1);

/// Probabilists' Hermite polynomial He_n(x).
double hermite_he(std::size_t n, double x);

}  // namespace chaoscalc
