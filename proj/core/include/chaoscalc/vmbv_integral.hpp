#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "chaoscalc/chaos_vector.hpp"
#include "chaoscalc/errors.hpp"
#include "chaoscalc/kg_operator.hpp"
#include "chaoscalc/volterra_kernel.hpp"

namespace chaoscalc {

/// How the volatility enters the integrand.
enum class Modulation { none, pointwise, wick, strongind };

std::string to_string(Modulation m);
/// Accepts "none", "pointwise", "wick", "strongind".
Modulation modulation_from_string(const std::string& s);

struct VmbvOptions {
  /// Index used by the integrability diagnostics (G_{-lambda}).
  double lambda = 1.0;
  /// Regularity shift for the volatility norms.
  double nu = 1.0;
  /// Highest chaos order allowed in the result. Default: integrand order +
  /// volatility order + 1, which the pipeline never exceeds.
  std::optional<std::size_t> order_cap;
};

struct VolatilityDiagnostics {
  /// int ||vol(s)||^2 ds, at +lambda for pointwise and -lambda for Wick volatility.
  double vol_norm_integral = 0.0;
  /// int ||K_g(Phi)(t,s)||^2 ||vol(s)||^2 ds.
  double aggregate = 0.0;
};

struct VmbvDiagnostics {
  AssumptionReport kernel;
  std::optional<VolatilityDiagnostics> volatility;
};

struct VmbvResult {
  ChaosVector value;
  ChaosVector skorohod_part;
  ChaosVector drift_part;
  VmbvDiagnostics diagnostics;
  Modulation modulation = Modulation::none;
};

/// int K_g(Phi)(t,s) dB(s) + int D_s K_g(Phi)(t,s) ds.
VmbvResult integrate_plain(const ChaosProcess& phi, const VolterraKernel& k, double t, const VmbvOptions& opt = {});

/// Pointwise volatility sigma in both terms.
VmbvResult integrate_sigma(const ChaosProcess& phi, const ChaosProcess& sigma, const VolterraKernel& k, double t,
                           const VmbvOptions& opt = {});

/// Wick volatility Sigma in both terms.
VmbvResult integrate_wick(const ChaosProcess& phi, const ChaosProcess& vol, const VolterraKernel& k, double t,
                          const VmbvOptions& opt = {});

/// Pointwise products gated by strong independence of K_g(Phi)(t,s) and Sigma(s).
/// Throws IndependenceViolation naming the first offending s-cell.
VmbvResult integrate_strongind(const ChaosProcess& phi, const ChaosProcess& vol, const VolterraKernel& k, double t,
                               const VmbvOptions& opt = {});

/// Dispatches on the modulation; vol is ignored for Modulation::none.
VmbvResult integrate(Modulation m, const ChaosProcess& phi, const ChaosProcess* vol, const VolterraKernel& k,
                     double t, const VmbvOptions& opt = {});

}  // namespace chaoscalc
