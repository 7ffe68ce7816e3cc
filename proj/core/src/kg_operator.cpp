#include "chaoscalc/kg_operator.hpp"

#include <cmath>
#include <stdexcept>

namespace chaoscalc {

KgPlan make_kg_plan(const VolterraKernel& k, const Grid& grid, double t) {
  if (!(t > 0.0) || t > grid.horizon() * (1.0 + 1e-12)) throw std::invalid_argument("K_g: t outside (0, horizon]");
  KgPlan p(grid);
  p.cells = grid.boundary_index(t);
  if (p.cells == 0) throw std::invalid_argument("K_g: t is below the first cell boundary");
  p.t = grid.point(p.cells);
  const std::size_t m = p.cells;
  p.sample_point.resize(m);
  p.g_t.resize(m);
  p.g_edge.resize(m);
  p.weights.resize(m);
  p.total_variation.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double s = (static_cast<double>(i) + k.diagonal_offset()) * grid.step();
    p.sample_point[i] = s;
    const KernelValue gt = kernel_eval(k, grid, p.t, s);
    const KernelValue ge = kernel_eval(k, grid, grid.point(i + 1), s);
    p.clipped = p.clipped || gt.clipped || ge.clipped;
    p.g_t[i] = gt.value;
    p.g_edge[i] = ge.value;
    if (i + 1 < m) {
      const KernelMeasure meas = kernel_measure(k, grid, s, grid.point(i + 1), p.t);
      p.weights[i].reserve(meas.weights.size());
      for (const auto& [cell, w] : meas.weights) p.weights[i].push_back(w);
      p.total_variation[i] = meas.total_variation;
    }
  }
  return p;
}

ChaosVector kg_value(const KgPlan& plan, const ChaosProcess& phi, std::size_t i) {
  require_same_grid(plan.grid, phi.grid(), "K_g");
  if (i >= plan.cells) throw std::invalid_argument("K_g: s-cell not below t");
  std::size_t top = phi.values()[i].size();
  for (std::size_t k = i + 1; k < plan.cells; ++k) top = std::max(top, phi.values()[k].size());
  std::vector<SymKernel> out;
  out.reserve(top);
  for (std::size_t n = 0; n < top; ++n) {
    SymKernelBuilder bld(n, plan.grid);
    const ChaosVector& own = phi.values()[i];
    if (n < own.size()) bld.add_scaled(plan.g_edge[i], own.components()[n]);
    for (std::size_t k = i + 1; k < plan.cells; ++k) {
      const ChaosVector& v = phi.values()[k];
      if (n < v.size()) bld.add_scaled(plan.weights[i][k - i - 1], v.components()[n]);
    }
    out.push_back(std::move(bld).build());
  }
  return ChaosVector(plan.grid, std::move(out));
}

ChaosProcess kg_apply(const ChaosProcess& phi, const KgPlan& plan) {
  require_same_grid(plan.grid, phi.grid(), "K_g");
  std::vector<ChaosVector> values;
  values.reserve(phi.cells());
  for (std::size_t i = 0; i < phi.cells(); ++i)
    values.push_back(i < plan.cells ? kg_value(plan, phi, i) : ChaosVector(phi.grid()));
  return ChaosProcess(phi.grid(), std::move(values));
}

ChaosProcess kg_apply(const ChaosProcess& phi, const VolterraKernel& k, double t) {
  return kg_apply(phi, make_kg_plan(k, phi.grid(), t));
}

bool AssumptionReport::finite() const { return !first_failure().has_value(); }

std::optional<std::string> AssumptionReport::first_failure() const {
  for (double v : a3)
    if (!std::isfinite(v)) return "increment_variation";
  if (!std::isfinite(b4)) return "diagonal_energy";
  if (!std::isfinite(b5)) return "increment_energy";
  if (!std::isfinite(aggregate)) return "kg_energy";
  return std::nullopt;
}

AssumptionReport assumption_report(const ChaosProcess& phi, const KgPlan& plan, double lambda) {
  require_same_grid(plan.grid, phi.grid(), "assumption_report");
  const double step = plan.grid.step();
  const std::size_t m = plan.cells;
  AssumptionReport r;
  r.lambda = lambda;
  r.t = plan.t;
  r.clipped = plan.clipped;
  r.total_variation = plan.total_variation;
  r.a3.assign(m, 0.0);

  std::vector<double> own_norm(m);
  for (std::size_t i = 0; i < m; ++i) own_norm[i] = gnorm(phi.values()[i], -lambda);

  for (std::size_t i = 0; i < m; ++i) {
    const ChaosVector& own = phi.values()[i];
    double a3 = 0.0;
    ChaosVector stieltjes = own.scaled(plan.g_edge[i] - plan.g_t[i]);
    for (std::size_t k = i + 1; k < m; ++k) {
      const double w = plan.weights[i][k - i - 1];
      if (w == 0.0) continue;
      const ChaosVector diff = phi.values()[k] - own;
      const double d = gnorm(diff, -lambda);
      a3 += std::abs(w) * d * d;
      stieltjes = linear_combine(1.0, stieltjes, w, phi.values()[k]);
    }
    r.a3[i] = a3;
    r.b4 += step * plan.g_t[i] * plan.g_t[i] * own_norm[i] * own_norm[i];
    const double sn = gnorm(stieltjes, -lambda);
    r.b5 += step * sn * sn;
    const double kn = gnorm(linear_combine(plan.g_t[i], own, 1.0, stieltjes), -lambda);
    r.aggregate += step * kn * kn;
  }
  return r;
}

AssumptionReport assumption_report(const ChaosProcess& phi, const VolterraKernel& k, double lambda, double t) {
  return assumption_report(phi, make_kg_plan(k, phi.grid(), t), lambda);
}

}  // namespace chaoscalc
