#include "chaoscalc/vmbv_integral.hpp"

#include <cmath>
#include <stdexcept>

#include "chaoscalc/operators.hpp"
#include "chaoscalc/products.hpp"

namespace chaoscalc {

namespace {

ChaosVector modulate(Modulation m, const ChaosVector& x, const ChaosVector* vol) {
  switch (m) {
    case Modulation::none:
      return x;
    case Modulation::pointwise:
    case Modulation::strongind:
      return pointwise(x, *vol);
    case Modulation::wick:
      return wick(x, *vol);
  }
  return x;
}

void check_gate(const AssumptionReport& r) {
  if (auto bad = r.first_failure())
    throw IntegrabilityViolation(*bad, "non-finite value at lambda = " + std::to_string(r.lambda));
}

VolatilityDiagnostics volatility_diagnostics(Modulation m, const std::vector<ChaosVector>& kg,
                                             const ChaosProcess& vol, std::size_t cells, const VmbvOptions& opt) {
  VolatilityDiagnostics d;
  const double step = vol.grid().step();
  const bool wick_like = m == Modulation::wick || m == Modulation::strongind;
  for (std::size_t i = 0; i < cells; ++i) {
    const double vn = gnorm(vol.values()[i], wick_like ? -opt.lambda : opt.lambda);
    const double kn = gnorm(kg[i], wick_like ? -opt.lambda : -opt.lambda + opt.nu);
    d.vol_norm_integral += step * vn * vn;
    d.aggregate += step * kn * kn * vn * vn;
  }
  const char* item = wick_like ? "wick_volatility_energy" : "sigma_energy";
  if (!std::isfinite(d.vol_norm_integral)) throw IntegrabilityViolation(item, "non-finite volatility norm");
  if (!std::isfinite(d.aggregate))
    throw IntegrabilityViolation(wick_like ? "wick_aggregate" : "sigma_aggregate", "non-finite");
  return d;
}

}  // namespace

std::string to_string(Modulation m) {
  switch (m) {
    case Modulation::none: return "none";
    case Modulation::pointwise: return "pointwise";
    case Modulation::wick: return "wick";
    case Modulation::strongind: return "strongind";
  }
  return "none";
}

Modulation modulation_from_string(const std::string& s) {
  if (s == "none") return Modulation::none;
  if (s == "pointwise") return Modulation::pointwise;
  if (s == "wick") return Modulation::wick;
  if (s == "strongind") return Modulation::strongind;
  throw std::invalid_argument("unknown volatility mode '" + s + "'");
}

VmbvResult integrate(Modulation m, const ChaosProcess& phi, const ChaosProcess* vol, const VolterraKernel& k,
                     double t, const VmbvOptions& opt) {
  const Grid& grid = phi.grid();
  if (m != Modulation::none) {
    if (vol == nullptr) throw std::invalid_argument("volatility process required for " + to_string(m));
    require_same_grid(grid, vol->grid(), "integrate");
  }
  const KgPlan plan = make_kg_plan(k, grid, t);
  const std::size_t cells = plan.cells;

  AssumptionReport report = assumption_report(phi, plan, opt.lambda);
  check_gate(report);

  std::vector<ChaosVector> kg;
  kg.reserve(cells);
  for (std::size_t i = 0; i < cells; ++i) kg.push_back(kg_value(plan, phi, i));

  std::optional<VolatilityDiagnostics> vdiag;
  if (m != Modulation::none) vdiag = volatility_diagnostics(m, kg, *vol, cells, opt);

  if (m == Modulation::strongind) {
    for (std::size_t i = 0; i < cells; ++i) {
      if (!strongly_independent(kg[i], vol->values()[i]).disjoint)
        throw IndependenceViolation(i, "K_g(Phi)(t,s) and Sigma(s) share support at s-cell " + std::to_string(i));
    }
  }

  const std::size_t vol_order = m == Modulation::none ? 0 : vol->max_order();
  const std::size_t cap = opt.order_cap.value_or(phi.max_order() + vol_order + 1);

  std::vector<ChaosVector> prod(grid.cells(), ChaosVector(grid));
  std::vector<ChaosVector> drift(grid.cells(), ChaosVector(grid));
  for (std::size_t i = 0; i < cells; ++i) {
    const ChaosVector* v = m == Modulation::none ? nullptr : &vol->values()[i];
    prod[i] = modulate(m, kg[i], v);
    if (!prod[i].is_zero() && prod[i].max_order() + 1 > cap)
      throw TruncationOverflow("integrand order " + std::to_string(prod[i].max_order()) + " at s-cell " +
                               std::to_string(i) + " exceeds the order cap " + std::to_string(cap));
    drift[i] = modulate(m, derivative_at(kg[i], static_cast<CellIndex>(i)), v);
  }

  VmbvResult r{ChaosVector(grid), ChaosVector(grid), ChaosVector(grid), {std::move(report), vdiag}, m};
  r.skorohod_part = skorohod_cells(ChaosProcess(grid, std::move(prod)), 0, cells);
  r.drift_part = pettis_cells(ChaosProcess(grid, std::move(drift)), 0, cells);
  r.value = r.skorohod_part + r.drift_part;
  return r;
}

VmbvResult integrate_plain(const ChaosProcess& phi, const VolterraKernel& k, double t, const VmbvOptions& opt) {
  return integrate(Modulation::none, phi, nullptr, k, t, opt);
}

VmbvResult integrate_sigma(const ChaosProcess& phi, const ChaosProcess& sigma, const VolterraKernel& k, double t,
                           const VmbvOptions& opt) {
  return integrate(Modulation::pointwise, phi, &sigma, k, t, opt);
}

VmbvResult integrate_wick(const ChaosProcess& phi, const ChaosProcess& vol, const VolterraKernel& k, double t,
                          const VmbvOptions& opt) {
  return integrate(Modulation::wick, phi, &vol, k, t, opt);
}

VmbvResult integrate_strongind(const ChaosProcess& phi, const ChaosProcess& vol, const VolterraKernel& k, double t,
                               const VmbvOptions& opt) {
  return integrate(Modulation::strongind, phi, &vol, k, t, opt);
}

}  // namespace chaoscalc
