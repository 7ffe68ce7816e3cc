#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "chaoscalc/grid.hpp"

namespace chaoscalc {

enum class KernelKind { ou, turbulence, fbm, table };

/// Deterministic Volterra kernel g(t, s), 0 <= s < t.
///
///   ou          exp(-alpha (t-s)), alpha >= 0 (alpha = 0 gives g = 1)
///   turbulence  (t-s)^(nu-1) exp(-alpha (t-s)), alpha > 0, nu > 1/2
///   fbm         c(H)(t-s)^(H-1/2) + c(H)(1/2-H) int_s^t (u-s)^(H-3/2)(1-(s/u)^(1/2-H)) du
///   table       g(a*step, cell b) = values[a][b] on one fixed grid
class VolterraKernel {
 public:
  static VolterraKernel ou(double alpha);
  static VolterraKernel turbulence(double alpha, double nu);
  static VolterraKernel fbm(double hurst);
  /// values has cells+1 rows (time boundaries) of cells columns (s-cells).
  static VolterraKernel table(const Grid& grid, std::vector<std::vector<double>> values);

  static VolterraKernel from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  KernelKind kind() const noexcept { return kind_; }
  std::string name() const;
  double alpha() const noexcept { return alpha_; }
  double nu() const noexcept { return nu_; }
  double hurst() const noexcept { return hurst_; }

  /// Sample offset inside an s-cell and minimum diagonal distance, in step units.
  double diagonal_offset() const noexcept { return diagonal_offset_; }
  VolterraKernel with_diagonal_offset(double offset) const;

  bool singular_at_diagonal() const noexcept;
  /// Power-law exponent of g near t = s (0 for regular kernels).
  double singularity_exponent() const noexcept;

  /// g(t, s). Throws std::invalid_argument unless 0 <= s < t.
  double operator()(double t, double s) const;

  /// d/du g(u, s), analytic where available, central difference for tables.
  double density(double u, double s) const;

  /// Total variation of u -> g(u, s) on [lo, hi], s < lo.
  double variation(double s, double lo, double hi) const;

  /// The normalizing constant c(H) of the fbm kernel.
  static double fbm_constant(double hurst);

 private:
  VolterraKernel() = default;
  double table_value(double t, double s) const;

  KernelKind kind_ = KernelKind::ou;
  double alpha_ = 0.0;
  double nu_ = 1.0;
  double hurst_ = 0.5;
  double fbm_c_ = 1.0;
  double diagonal_offset_ = 0.5;
  double table_horizon_ = 0.0;
  std::size_t table_cells_ = 0;
  std::vector<std::vector<double>> table_;
};

struct KernelValue {
  double value = 0.0;
  bool clipped = false;
};

/// g(t, s) with the diagonal policy: for singular kernels, s is moved to
/// t - diagonal_offset*step when closer than that, and the result is flagged.
KernelValue kernel_eval(const VolterraKernel& k, const Grid& grid, double t, double s);

struct KernelMeasure {
  /// (cell k, g(u_{k+1}, s) - g(u_k, s)) for cells in [u_lo, u_hi).
  std::vector<std::pair<CellIndex, double>> weights;
  double total_variation = 0.0;
};

/// Stieltjes weights of g(du, s) on [u_lo, u_hi], both snapped to cell boundaries.
KernelMeasure kernel_measure(const VolterraKernel& k, const Grid& grid, double s, double u_lo, double u_hi);

}  // namespace chaoscalc
