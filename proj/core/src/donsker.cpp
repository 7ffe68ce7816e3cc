#include "chaoscalc/donsker.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "chaoscalc/kg_operator.hpp"
#include "chaoscalc/vmbv_integral.hpp"

namespace chaoscalc {

namespace {

std::size_t aligned_cells(const Grid& grid, double t, const char* what) {
  if (!(t > 0.0)) throw std::invalid_argument(std::string(what) + ": t must be positive (delta_0(B(0)) does not exist)");
  const std::size_t p = grid.boundary_index(t);
  if (std::abs(grid.point(p) - t) > 1e-9 * std::max(1.0, t))
    throw std::invalid_argument(std::string(what) + ": t must lie on a cell boundary");
  return p;
}

double donsker_coefficient(double t, std::size_t n) {
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  return sign / (std::sqrt(2.0 * std::numbers::pi * t) * std::pow(2.0 * t, static_cast<double>(n)) *
                 factorial(n));
}

}  // namespace

ChaosVector donsker_delta(double t, std::size_t n_terms, const Grid& grid) {
  const std::size_t p = aligned_cells(grid, t, "donsker_delta");
  const double tt = grid.point(p);
  std::vector<SymKernel> comps;
  comps.push_back(SymKernel::scalar(donsker_coefficient(tt, 0), grid));
  for (std::size_t n = 1; n <= n_terms; ++n) {
    comps.emplace_back(2 * n - 1, grid);
    comps.push_back(SymKernel::prefix_cube(2 * n, grid, donsker_coefficient(tt, n), p));
  }
  return ChaosVector(grid, std::move(comps));
}

double donsker_norm_series(double t, double lambda, std::size_t n_terms) {
  if (!(lambda > 0.0)) throw std::invalid_argument("donsker_norm_series: lambda must be positive");
  if (!(t > 0.0)) throw std::invalid_argument("donsker_norm_series: t must be positive");
  // term_n = C(2n,n)/4^n e^{-4 lambda n}, built by its ratio (2n-1)/(2n).
  double term = 1.0, acc = 1.0;
  const double damp = std::exp(-4.0 * lambda);
  for (std::size_t n = 1; n <= n_terms; ++n) {
    term *= damp * (2.0 * static_cast<double>(n) - 1.0) / (2.0 * static_cast<double>(n));
    acc += term;
  }
  return acc / (2.0 * std::numbers::pi * t);
}

double donsker_norm_limit(double t, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("donsker_norm_limit: lambda must be positive");
  return 1.0 / (2.0 * std::numbers::pi * t * std::sqrt(-std::expm1(-4.0 * lambda)));
}

ChaosProcess donsker_process(const Grid& grid, std::size_t n_terms, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("donsker_process: eps must be positive");
  const std::size_t first = aligned_cells(grid, eps, "donsker_process");
  return ChaosProcess::generate(grid, [&](CellIndex k) {
    if (k < first) return ChaosVector(grid);
    return donsker_delta(grid.point(k), n_terms, grid);
  });
}

DonskerReport donsker_vmbv_experiment(const DonskerConfig& cfg) {
  if (!(cfg.eps < cfg.t)) throw std::invalid_argument("donsker experiment: eps must be below t");
  const Grid grid = Grid::make(cfg.horizon, cfg.cells);
  const ChaosProcess phi = donsker_process(grid, cfg.n_terms, cfg.eps);
  const VolterraKernel kernel = VolterraKernel::ou(cfg.alpha);
  const KgPlan plan = make_kg_plan(kernel, grid, cfg.t);
  const std::size_t first = grid.boundary_index(cfg.eps);

  DonskerReport rep;
  rep.config = cfg;
  const AssumptionReport ar = assumption_report(phi, plan, cfg.lambda);
  for (std::size_t i = first; i < plan.cells; ++i) {
    const double s = grid.point(i);
    DonskerCellRow row{i, s, ar.a3[i],
                       4.0 * donsker_norm_series(s, cfg.lambda, cfg.n_terms) * -std::expm1(-cfg.alpha * (plan.t - s))};
    rep.a3_max = std::max(rep.a3_max, row.a3);
    rep.bound_max = std::max(rep.bound_max, row.bound);
    rep.dominated = rep.dominated && row.a3 <= row.bound;
    rep.cells.push_back(row);
  }
  if (rep.cells.size() >= 2) rep.diverging_near_zero = rep.cells[0].a3 > rep.cells[1].a3;

  VmbvOptions opt;
  opt.lambda = cfg.lambda;
  const VmbvResult res = integrate_plain(phi, kernel, cfg.t, opt);
  const auto norms = component_norms_sq(res.value);
  for (double lam : cfg.lambda_sweep) {
    const double g = gnorm_from_norms(norms, -lam);
    rep.norms.push_back({lam, g * g, std::isfinite(g)});
  }

  if (first < plan.cells) {
    const ChaosVector kv = kg_value(plan, phi, first);
    rep.kg_sign_pattern = true;
    for (std::size_t n = 0; n <= std::min<std::size_t>(3, cfg.n_terms); ++n) {
      const Tuple zeros(2 * n, 0);
      const double c = kv.component(2 * n).value_at(zeros);
      rep.kg_even_coefficients.push_back(c);
      const bool expect_positive = n % 2 == 0;
      rep.kg_sign_pattern = rep.kg_sign_pattern && (expect_positive ? c > 0.0 : c < 0.0);
    }
  }
  return rep;
}

}  // namespace chaoscalc
