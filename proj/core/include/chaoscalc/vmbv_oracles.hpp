#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "chaoscalc/chaos_vector.hpp"
#include "chaoscalc/operators.hpp"
#include "chaoscalc/vmbv_integral.hpp"
#include "chaoscalc/volterra_kernel.hpp"

namespace chaoscalc {

/// Chaos-expansion formula for int Phi dX_1, built pointwise from kernel
/// values with its own K_g evaluation. Only for grids small enough to
/// enumerate every multiset of the result orders.
ChaosVector chaos_formula_oracle(const ChaosProcess& phi, const VolterraKernel& k, double t);

/// The Wick-volatility analogue: order-n drift terms carry
/// (n+1-m) K_g(Phi^{(n+1-m)})(t, ., s) (x)^ Sigma^{(m)}(s).
ChaosVector chaos_formula_oracle_wick(const ChaosProcess& phi, const ChaosProcess& vol, const VolterraKernel& k,
                                      double t);

/// S-transform of the integral from scalar data only:
///   int K_g(S Phi(xi))(t,s) xi(s) ds + int d/dxi(s) K_g(S Phi(xi))(t,s) ds,
/// each term multiplied by S Sigma(s)(xi) when vol is given (Wick case).
double s_transform_oracle(const ChaosProcess& phi, const VolterraKernel& k, double t, const TestFunctionXi& xi,
                          const ChaosProcess* vol = nullptr);

struct StabilityRow {
  std::size_t n = 0;
  /// gnorm(int Phi_n - int Phi, index).
  double residual = 0.0;
  /// gnorm(int Psi, index) / n.
  double predicted = 0.0;
};

/// Phi_n = Phi + Psi / n for n = 1..n_max; the norm index is -lambda-epsilon,
/// shifted by a further -1/2 for Wick volatility.
std::vector<StabilityRow> stability_suite(const ChaosProcess& phi, const ChaosProcess& psi, const VolterraKernel& k,
                                          double t, double lambda, double epsilon, std::size_t n_max,
                                          Modulation m = Modulation::none, const ChaosProcess* vol = nullptr);

}  // namespace chaoscalc
