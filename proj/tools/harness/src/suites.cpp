#include "chaoscalc/harness/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "chaoscalc/donsker.hpp"
#include "chaoscalc/errors.hpp"
#include "chaoscalc/montecarlo.hpp"
#include "chaoscalc/operators.hpp"
#include "chaoscalc/products.hpp"
#include "chaoscalc/random_chaos.hpp"
#include "chaoscalc/vmbv_integral.hpp"
#include "chaoscalc/vmbv_oracles.hpp"

namespace chaoscalc::harness {

namespace {

constexpr double kExact = 1e-12;

Check make_check(std::string name, double value, double tol, std::string detail = {}) {
  Check c{std::move(name), value, tol, std::isfinite(value) && value <= tol, std::move(detail)};
  return c;
}

// Running maximum of one residual.
struct Tracker {
  double worst = 0.0;
  void add(double v) { worst = std::isnan(v) ? std::numeric_limits<double>::infinity() : std::max(worst, v); }
};

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

TestFunctionXi random_xi(const Grid& g, Rng& rng) {
  std::normal_distribution<double> n;
  std::vector<double> v(g.cells());
  for (auto& x : v) x = n(rng);
  return {g, std::move(v)};
}

// S-transform with absolute values everywhere; a rounding scale.
double s_transform_abs(const ChaosVector& v, const TestFunctionXi& xi) {
  std::vector<double> a(xi.values().size());
  std::transform(xi.values().begin(), xi.values().end(), a.begin(), [](double x) { return std::abs(x); });
  const TestFunctionXi ax(xi.grid(), std::move(a));
  double acc = 0.0;
  for (const auto& k : v.components()) {
    const SymKernel dense = k.materialized();
    SymKernelBuilder b(k.order(), k.grid());
    for (const auto& [t, c] : dense.entries()) b.add_entry(t, std::abs(c));
    acc += kernel_s_transform(std::move(b).build(), ax);
  }
  return acc;
}

double scaled_diff(double a, double b, double scale) {
  return std::abs(a - b) / std::max(scale, std::numeric_limits<double>::min());
}

ChaosProcess map_process(const ChaosProcess& p, const std::function<ChaosVector(CellIndex, const ChaosVector&)>& f) {
  return ChaosProcess::generate(p.grid(), [&](CellIndex j) { return f(j, p.values()[j]); });
}

ChaosProcess cut_after(const ChaosProcess& p, std::size_t cells) {
  return map_process(p, [&](CellIndex j, const ChaosVector& v) { return j < cells ? v : ChaosVector(p.grid()); });
}

VolterraKernel kernel_for_draw(std::size_t d, Rng& rng) {
  switch (d % 4) {
    case 0: return VolterraKernel::ou(uniform(rng, 0.2, 2.0));
    case 1: return VolterraKernel::turbulence(uniform(rng, 0.5, 2.0), uniform(rng, 1.1, 2.5));
    case 2: return VolterraKernel::fbm(uniform(rng, 0.55, 0.85));
    default: return VolterraKernel::turbulence(1.0, 0.75);
  }
}

double sup_weight(double eps, double shift) {
  // sup_n (n + shift) e^{-2 eps n}, n >= 0
  double best = 0.0;
  for (int n = 0; n < 100000; ++n) {
    const double v = (n + shift) * std::exp(-2.0 * eps * n);
    best = std::max(best, v);
    if (n > 1.0 / eps + 10 && v < best * 1e-3) break;
  }
  return best;
}

}  // namespace

std::string format_value(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check& worst(const std::vector<Check>& checks) {
  const Check* w = &checks.front();
  auto ratio = [](const Check& c) {
    if (c.tolerance > 0) return c.value / c.tolerance;
    return c.value > 0 ? std::numeric_limits<double>::infinity() : 0.0;
  };
  for (const auto& c : checks) {
    if (c.pass != w->pass) {
      if (!c.pass) w = &c;
      continue;
    }
    if (ratio(c) > ratio(*w)) w = &c;
  }
  return *w;
}

double relative_residual(const ChaosVector& a, const ChaosVector& b) {
  const double d = gnorm(a - b, 0.0);
  if (d == 0.0) return 0.0;
  return d / std::max(gnorm(a, 0.0), gnorm(b, 0.0));
}

std::vector<Check> identity_suite(const SuiteConfig& cfg) {
  const Grid g = Grid::make(cfg.horizon, cfg.cells);
  const std::size_t m = g.cells();
  const std::size_t ord = cfg.max_order;
  const std::size_t prod_ord = std::min<std::size_t>(ord, 2);
  Tracker ftc, ibp, wick_rule, point_rule, additivity, indicator, localization, linearity, pull_out;
  const VolterraKernel unit = VolterraKernel::ou(0.0);

  for (std::size_t d = 0; d < cfg.draws; ++d) {
    Rng rng = make_rng(cfg.seed, d);

    const ChaosProcess psi = random_process(g, rng, ord, 0.5);
    const ChaosVector dpsi = skorohod_cells(psi, 0, m);
    for (std::size_t j = 0; j < m; ++j) {
      const auto cj = static_cast<CellIndex>(j);
      const ChaosProcess djpsi = map_process(psi, [&](CellIndex, const ChaosVector& v) { return derivative_at(v, cj); });
      ftc.add(relative_residual(derivative_at(dpsi, cj), psi.values()[j] + skorohod_cells(djpsi, 0, m)));
    }

    {
      const ChaosVector phi = random_vector(g, rng, prod_ord, 0.5);
      const ChaosProcess q = random_process(g, rng, prod_ord, 0.5);
      const ChaosVector lhs =
          skorohod_cells(map_process(q, [&](CellIndex, const ChaosVector& v) { return pointwise(phi, v); }), 0, m);
      const ChaosVector correction = pettis_cells(
          map_process(q, [&](CellIndex j, const ChaosVector& v) { return pointwise(v, derivative_at(phi, j)); }), 0,
          m);
      ibp.add(relative_residual(lhs, pointwise(phi, skorohod_cells(q, 0, m)) - correction));
    }

    {
      const ChaosVector a = random_vector(g, rng, ord, 0.5);
      const ChaosVector b = random_vector(g, rng, ord, 0.5);
      const auto j = static_cast<CellIndex>(uniform_index(rng, 0, m - 1));
      const ChaosVector da = derivative_at(a, j), db = derivative_at(b, j);
      wick_rule.add(relative_residual(derivative_at(wick(a, b), j), wick(da, b) + wick(a, db)));
      point_rule.add(relative_residual(derivative_at(pointwise(a, b), j), pointwise(da, b) + pointwise(a, db)));
    }

    {
      const std::size_t cut = uniform_index(rng, 1, m - 1);
      const double tc = g.point(cut);
      additivity.add(relative_residual(skorohod(psi, 0.0, tc) + skorohod(psi, tc, g.horizon()), dpsi));
      const std::size_t lo = uniform_index(rng, 0, m - 1);
      const std::size_t hi = uniform_index(rng, lo + 1, m);
      const ChaosProcess one = ChaosProcess::constant(ChaosVector::constant(1.0, g));
      indicator.add(relative_residual(skorohod(one, g.point(lo), g.point(hi)),
                                      ChaosVector::single(SymKernel::indicator(g, lo, hi))));
    }

    {
      const ChaosProcess phi = random_process(g, rng, prod_ord, 0.5);
      const ChaosProcess vol = random_process(g, rng, 1, 0.5);
      const std::size_t s_cells = uniform_index(rng, 1, m);
      const double s = g.point(s_cells);
      const ChaosProcess cut = cut_after(phi, s_cells);
      localization.add(relative_residual(integrate_plain(cut, unit, g.horizon()).value,
                                         integrate_plain(phi, unit, s).value));
      localization.add(relative_residual(integrate_wick(cut, vol, unit, g.horizon()).value,
                                         integrate_wick(phi, vol, unit, s).value));
      localization.add(relative_residual(integrate_sigma(cut, vol, unit, g.horizon()).value,
                                         integrate_sigma(phi, vol, unit, s).value));
    }

    {
      const ChaosProcess phi = random_process(g, rng, prod_ord, 0.5);
      const ChaosProcess other = random_process(g, rng, prod_ord, 0.5);
      const ChaosProcess vol = random_process(g, rng, 1, 0.5);
      const double a = uniform(rng, -2.0, 2.0), b = uniform(rng, -2.0, 2.0);
      const VolterraKernel k = VolterraKernel::ou(uniform(rng, 0.2, 2.0));
      const ChaosProcess comb = phi.scaled(a) + other.scaled(b);
      for (Modulation mod : {Modulation::none, Modulation::pointwise, Modulation::wick}) {
        const ChaosVector lhs = integrate(mod, comb, &vol, k, g.horizon()).value;
        const ChaosVector rhs = linear_combine(a, integrate(mod, phi, &vol, k, g.horizon()).value, b,
                                               integrate(mod, other, &vol, k, g.horizon()).value);
        linearity.add(relative_residual(lhs, rhs));
      }
    }

    {
      const ChaosVector test = random_vector(g, rng, 1, 0.6);
      const ChaosProcess phi = random_process(g, rng, prod_ord, 0.5);
      const ChaosProcess sigma = random_process(g, rng, 1, 0.5);
      const VolterraKernel k = VolterraKernel::ou(uniform(rng, 0.2, 2.0));
      const double t = g.point(uniform_index(rng, 1, m));
      const ChaosProcess scaled = map_process(phi, [&](CellIndex, const ChaosVector& v) { return pointwise(test, v); });
      pull_out.add(relative_residual(integrate_sigma(scaled, sigma, k, t).value,
                                     pointwise(test, integrate_sigma(phi, sigma, k, t).value)));
      pull_out.add(relative_residual(integrate_plain(scaled, k, t).value,
                                     pointwise(test, integrate_plain(phi, k, t).value)));
    }
  }

  const double tol = cfg.tolerance;
  return {make_check("ftc", ftc.worst, tol),
          make_check("integration_by_parts", ibp.worst, tol),
          make_check("wick_product_rule", wick_rule.worst, tol),
          make_check("pointwise_product_rule", point_rule.worst, tol),
          make_check("skorohod_additivity", additivity.worst, tol),
          make_check("skorohod_of_indicator", indicator.worst, tol),
          make_check("localization", localization.worst, tol),
          make_check("linearity", linearity.worst, tol),
          make_check("pull_out", pull_out.worst, tol)};
}

std::vector<Check> oracle_suite(const SuiteConfig& cfg) {
  const Grid g = Grid::make(cfg.horizon, cfg.cells);
  Tracker plain, wick_t;
  for (std::size_t d = 0; d < cfg.draws; ++d) {
    Rng rng = make_rng(cfg.seed + 1, d);
    const VolterraKernel k = kernel_for_draw(d, rng);
    const double t = g.point(uniform_index(rng, 1, g.cells()));
    const ChaosProcess phi = random_process(g, rng, cfg.max_order, 0.5);
    plain.add(relative_residual(chaos_formula_oracle(phi, k, t), integrate_plain(phi, k, t).value));
    const ChaosProcess phi2 = random_process(g, rng, std::min<std::size_t>(cfg.max_order, 2), 0.5);
    const ChaosProcess vol = random_process(g, rng, 1, 0.5);
    wick_t.add(relative_residual(chaos_formula_oracle_wick(phi2, vol, k, t), integrate_wick(phi2, vol, k, t).value));
  }
  return {make_check("chaos_formula_plain", plain.worst, cfg.tolerance),
          make_check("chaos_formula_wick", wick_t.worst, cfg.tolerance)};
}

std::vector<Check> s_transform_suite(const SuiteConfig& cfg) {
  const Grid g = Grid::make(cfg.horizon, cfg.cells);
  Tracker mult, interchange, frechet, oracle_plain, oracle_wick;
  const double h = 1e-4;
  for (std::size_t d = 0; d < cfg.draws; ++d) {
    Rng rng = make_rng(cfg.seed + 2, d);
    const TestFunctionXi xi = random_xi(g, rng);

    const ChaosVector a = random_vector(g, rng, cfg.max_order, 0.5);
    const ChaosVector b = random_vector(g, rng, cfg.max_order, 0.5);
    mult.add(scaled_diff(s_transform(wick(a, b), xi), s_transform(a, xi) * s_transform(b, xi),
                         s_transform_abs(a, xi) * s_transform_abs(b, xi)));

    const ChaosProcess psi = random_process(g, rng, cfg.max_order, 0.5);
    double direct = 0.0, scale = 0.0;
    for (const auto& v : psi.values()) {
      direct += g.step() * s_transform(v, xi);
      scale += g.step() * s_transform_abs(v, xi);
    }
    interchange.add(scaled_diff(s_transform(pettis_cells(psi, 0, g.cells()), xi), direct, scale));

    const auto j = static_cast<CellIndex>(uniform_index(rng, 0, g.cells() - 1));
    const double fd = (s_transform(a, xi.bumped(j, h)) - s_transform(a, xi.bumped(j, -h))) / (2.0 * h);
    frechet.add(std::abs(s_transform_frechet(a, xi, j) - fd));

    const VolterraKernel k = kernel_for_draw(d, rng);
    const double t = g.point(uniform_index(rng, 1, g.cells()));
    const ChaosProcess phi = random_process(g, rng, cfg.max_order, 0.5);
    const ChaosVector v = integrate_plain(phi, k, t).value;
    oracle_plain.add(scaled_diff(s_transform_oracle(phi, k, t, xi), s_transform(v, xi), s_transform_abs(v, xi)));
    const ChaosProcess phi2 = random_process(g, rng, std::min<std::size_t>(cfg.max_order, 2), 0.5);
    const ChaosProcess vol = random_process(g, rng, 1, 0.5);
    const ChaosVector w = integrate_wick(phi2, vol, k, t).value;
    oracle_wick.add(
        scaled_diff(s_transform_oracle(phi2, k, t, xi, &vol), s_transform(w, xi), s_transform_abs(w, xi)));
  }
  {
    const ChaosVector dense = ChaosVector::single(SymKernel::prefix_cube(2, g, 1.0, g.cells()).materialized());
    Rng rng = make_rng(cfg.seed + 3);
    const TestFunctionXi xi = random_xi(g, rng);
    for (std::size_t j = 0; j < g.cells(); ++j) {
      const auto cj = static_cast<CellIndex>(j);
      const double fd = (s_transform(dense, xi.bumped(cj, h)) - s_transform(dense, xi.bumped(cj, -h))) / (2.0 * h);
      frechet.add(std::abs(s_transform_frechet(dense, xi, cj) - fd));
    }
  }
  return {make_check("wick_multiplicative", mult.worst, kExact),
          make_check("pettis_interchange", interchange.worst, kExact),
          make_check("frechet_finite_difference", frechet.worst, 1e-6),
          make_check("s_oracle_plain", oracle_plain.worst, cfg.tolerance),
          make_check("s_oracle_wick", oracle_wick.worst, cfg.tolerance)};
}

std::vector<Check> norm_estimate_suite(const SuiteConfig& cfg) {
  const Grid g = Grid::make(cfg.horizon, cfg.cells);
  const double step = g.step();
  std::size_t v1 = 0, v2 = 0, v3 = 0, v4 = 0;
  double r1 = 0.0, r2 = 0.0, r3 = 0.0, r4 = 0.0;
  auto ratio_check = [](double lhs, double rhs, std::size_t& viol, double& worst) {
    const double r = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    worst = std::max(worst, r);
    if (lhs > rhs * (1.0 + kExact)) ++viol;
  };
  for (std::size_t d = 0; d < cfg.draws; ++d) {
    Rng rng = make_rng(cfg.seed + 4, d);
    const double lambda = uniform(rng, 0.1, 2.0);
    const double eps = uniform(rng, 0.05, 1.0);

    const ChaosVector phi = random_vector(g, rng, cfg.max_order + 1, 0.5);
    double lhs = 0.0;
    for (std::size_t j = 0; j < g.cells(); ++j) {
      const double n = gnorm(derivative_at(phi, static_cast<CellIndex>(j)), -lambda - eps);
      lhs += step * n * n;
    }
    const double c1 = std::max(1.0, sup_weight(eps, 0.0));
    const double p = gnorm(phi, -lambda);
    ratio_check(lhs, c1 * p * p, v1, r1);

    const ChaosProcess psi = random_process(g, rng, cfg.max_order, 0.5);
    const double dn = gnorm(skorohod_cells(psi, 0, g.cells()), -lambda - eps);
    double rhs2 = 0.0;
    for (const auto& v : psi.values()) {
      const double n = gnorm(v, -lambda);
      rhs2 += step * n * n;
    }
    ratio_check(dn * dn, std::max(1.0, sup_weight(eps, 1.0)) * rhs2, v2, r2);

    const double lam = uniform(rng, 0.6, 2.5);
    const double lam_p = uniform(rng, -1.0, lam - 0.5 - 0.05);
    const ChaosVector a = random_vector(g, rng, cfg.max_order, 0.5);
    const ChaosVector b = random_vector(g, rng, cfg.max_order, 0.5);
    const double cw = std::exp(lam - lam_p - 1.0) / std::sqrt(2.0 * (lam - lam_p) - 1.0);
    ratio_check(gnorm(wick(a, b), lam_p), cw * gnorm(a, lam) * gnorm(b, lam), v3, r3);

    ratio_check(std::abs(pairing(a, b)), gnorm(a, -lambda) * gnorm(b, lambda), v4, r4);
  }
  auto detail = [](double worst) { return "worst lhs/rhs " + format_value(worst); };
  return {make_check("derivative_bound", static_cast<double>(v1), 0.0, detail(r1)),
          make_check("skorohod_bound", static_cast<double>(v2), 0.0, detail(r2)),
          make_check("wick_norm_bound", static_cast<double>(v3), 0.0, detail(r3)),
          make_check("duality_bound", static_cast<double>(v4), 0.0, detail(r4))};
}

std::vector<Check> independence_suite(const SuiteConfig& cfg) {
  const Grid g = Grid::make(cfg.horizon, cfg.cells);
  const std::size_t m = g.cells();
  Tracker products, integrals;
  std::size_t flagged_disjoint = 0, rejected = 0;
  for (std::size_t d = 0; d < cfg.draws; ++d) {
    Rng rng = make_rng(cfg.seed + 5, d);
    const std::size_t cut = uniform_index(rng, 1, m - 1);
    const ChaosVector a = random_vector(g, rng, cfg.max_order, 0.5, {0, cut});
    const ChaosVector b = random_vector(g, rng, cfg.max_order, 0.5, {cut, m});
    if (strongly_independent(a, b).disjoint) ++flagged_disjoint;
    products.add(relative_residual(pointwise(a, b), wick(a, b)));

    const VolterraKernel k = VolterraKernel::ou(uniform(rng, 0.2, 2.0));
    const double t = g.point(uniform_index(rng, 1, m));
    const ChaosProcess phi = random_process_on(g, rng, 2, 0.5, {0, m}, {0, cut});
    const ChaosProcess vol = random_process_on(g, rng, 1, 0.5, {0, m}, {cut, m});
    integrals.add(relative_residual(integrate_strongind(phi, vol, k, t).value, integrate_wick(phi, vol, k, t).value));

    const ChaosProcess dense = random_process(g, rng, 2, 0.5);
    const ChaosProcess dense_vol =
        ChaosProcess::generate(g, [&](CellIndex) { return random_vector(g, rng, 1, 1.0); });
    try {
      integrate_strongind(dense, dense_vol, k, g.horizon());
    } catch (const IndependenceViolation&) {
      ++rejected;
    }
  }
  const auto n = static_cast<double>(cfg.draws);
  return {make_check("disjoint_flagged", n - static_cast<double>(flagged_disjoint), 0.0),
          make_check("wick_equals_pointwise", products.worst, kExact),
          make_check("strongind_equals_wick", integrals.worst, kExact),
          make_check("overlap_rejected", n - static_cast<double>(rejected), 0.0)};
}

std::vector<Check> donsker_suite(const DonskerSuiteConfig& cfg) {
  std::vector<Check> out;
  const Grid g = Grid::make(1.0, cfg.cells);
  const double series = donsker_norm_series(1.0, 1.0, cfg.n_terms);
  const double tensor = std::pow(gnorm(donsker_delta(1.0, cfg.n_terms, g), -1.0), 2);
  const double limit = donsker_norm_limit(1.0, 1.0);
  out.push_back(make_check("series_equals_tensor", std::abs(series - tensor) / series, kExact,
                           "series " + format_value(series) + " tensor " + format_value(tensor)));
  out.push_back(make_check("series_vs_closed_form", std::abs(series - limit), 1e-5, "limit " + format_value(limit)));
  out.push_back(make_check("tensor_vs_closed_form", std::abs(tensor - limit), 1e-5));

  Tracker scaling;
  const double base = tensor * 1.0;
  for (double t : {0.25, 0.5, 0.75}) {
    const double n = gnorm(donsker_delta(t, cfg.n_terms, g), -1.0);
    scaling.add(std::abs(n * n * t - base) / base);
    scaling.add(std::abs(donsker_norm_series(2.0 * t, 1.0, cfg.n_terms) - donsker_norm_series(t, 1.0, cfg.n_terms) / 2.0) /
                donsker_norm_series(t, 1.0, cfg.n_terms));
  }
  out.push_back(make_check("one_over_t_scaling", scaling.worst, kExact));

  DonskerConfig dc;
  dc.alpha = cfg.alpha;
  dc.eps = cfg.eps;
  dc.t = cfg.t;
  dc.n_terms = cfg.experiment_terms;
  dc.lambda = cfg.lambda;
  dc.lambda_sweep = cfg.lambdas;
  dc.cells = cfg.cells;
  const DonskerReport rep = donsker_vmbv_experiment(dc);
  double worst_ratio = 0.0;
  for (const auto& row : rep.cells) worst_ratio = std::max(worst_ratio, row.a3 / row.bound);
  out.push_back(make_check("a3_dominated", worst_ratio, 1.0,
                           "max a3 " + format_value(rep.a3_max) + " max bound " + format_value(rep.bound_max)));
  double non_finite = 0.0;
  std::string norms;
  for (const auto& row : rep.norms) {
    if (!row.finite) non_finite += 1.0;
    norms += (norms.empty() ? "" : " ") + format_value(row.lambda) + ":" + format_value(row.norm_sq);
  }
  out.push_back(make_check("integral_norm_finite", non_finite, 0.0, norms));
  return out;
}

std::vector<Check> montecarlo_suite(const MonteCarloSuiteConfig& cfg) {
  std::vector<Check> out;
  const Grid g = Grid::make(1.0, cfg.cells);
  for (std::size_t n = 1; n <= 3; ++n) {
    Rng rng = make_rng(cfg.seed, n);
    const ChaosVector v = ChaosVector::single(random_kernel(n, g, rng, n == 3 ? 0.2 : 0.6));
    const double target = factorial(n) * v.components()[n].norm_sq();
    const MomentEstimate est = mc_moments([&](const NoiseVector& w) { return std::pow(evaluate(v, w), 2); }, g,
                                          cfg.paths, cfg.seed + n, cfg.threads);
    const double z = std::abs(est.mean - target) / est.se_mean;
    out.push_back(make_check("isometry_order_" + std::to_string(n), z, 3.0,
                             "mean " + format_value(est.mean) + " target " + format_value(target)));
  }

  {
    Rng rng = make_rng(cfg.seed, 10);
    const ChaosProcess phi = random_adapted_process(g, rng, 2, 0.6);
    const ChaosVector value = integrate_plain(phi, VolterraKernel::ou(0.0), 1.0).value;
    Tracker diff;
    for (std::size_t p = 0; p < cfg.pathwise_paths; ++p) {
      const NoiseVector w = sample_noise(g, cfg.seed + 100, p);
      const double a = evaluate(value, w), b = ito_oracle(phi, w);
      diff.add(std::abs(a - b) / std::max(1.0, std::abs(b)));
    }
    out.push_back(make_check("adapted_pathwise_ito", diff.worst, 1e-10));
  }

  {
    const double alpha = 1.0, t = 1.0;
    const ChaosProcess one = ChaosProcess::constant(ChaosVector::constant(1.0, g));
    const ChaosVector x = integrate_plain(one, VolterraKernel::ou(alpha), t).value;
    const MomentEstimate est = mc_moments(x, cfg.paths, cfg.seed + 200, cfg.threads);
    const double var_target = -std::expm1(-2.0 * alpha * t) / (2.0 * alpha);
    out.push_back(make_check("ou_mean", std::abs(est.mean) / est.se_mean, 3.0, "mean " + format_value(est.mean)));
    out.push_back(make_check("ou_variance", std::abs(est.variance - var_target) / est.se_variance, 3.0,
                             "var " + format_value(est.variance) + " target " + format_value(var_target)));
  }
  return out;
}

std::vector<FbmRow> fbm_covariance_table(const std::vector<double>& hursts,
                                         const std::vector<std::pair<double, double>>& pairs, std::size_t cells) {
  const Grid g = Grid::make(1.0, cells);
  std::vector<FbmRow> rows;
  for (double h : hursts) {
    const VolterraKernel k = VolterraKernel::fbm(h);
    for (const auto& [t, s] : pairs) {
      const std::size_t ms = g.boundary_index(std::min(s, t));
      double acc = 0.0;
      for (std::size_t i = 0; i < ms; ++i) {
        const double u = (static_cast<double>(i) + k.diagonal_offset()) * g.step();
        acc += g.step() * k(t, u) * k(s, u);
      }
      const double exact =
          0.5 * (std::pow(t, 2.0 * h) + std::pow(s, 2.0 * h) - std::pow(std::abs(t - s), 2.0 * h));
      rows.push_back({h, t, s, acc, exact, std::abs(acc - exact) / exact});
    }
  }
  return rows;
}

std::vector<Check> fbm_suite(std::size_t cells, double tolerance) {
  std::vector<Check> out;
  const auto rows = fbm_covariance_table({0.6, 0.7, 0.8}, {{1.0, 0.5}, {1.0, 0.25}, {0.75, 0.5}}, cells);
  for (const auto& r : rows)
    out.push_back(make_check("cov_H" + format_value(r.hurst) + "_t" + format_value(r.t) + "_s" + format_value(r.s), r.rel_error, tolerance,
                             "cov " + format_value(r.covariance) + " exact " + format_value(r.exact)));
  const auto half = fbm_covariance_table({0.7}, {{1.0, 0.5}}, cells).front();
  out.push_back(make_check("cov_half_equals_0.5", std::abs(half.covariance - 0.5) / 0.5, tolerance));
  return out;
}

std::vector<Check> stability_law_suite(const SuiteConfig& cfg) {
  const Grid g = Grid::make(cfg.horizon, cfg.cells);
  Tracker law[3], ratio[3];
  const Modulation mods[3] = {Modulation::none, Modulation::pointwise, Modulation::wick};
  const std::size_t n_max = 5;
  for (std::size_t d = 0; d < cfg.draws; ++d) {
    Rng rng = make_rng(cfg.seed + 6, d);
    const ChaosProcess phi = random_process(g, rng, std::min<std::size_t>(cfg.max_order, 2), 0.5);
    const ChaosProcess psi = random_process(g, rng, std::min<std::size_t>(cfg.max_order, 2), 0.5);
    const ChaosProcess vol = random_process(g, rng, 1, 0.5);
    const VolterraKernel k = VolterraKernel::ou(uniform(rng, 0.2, 2.0));
    const double t = g.point(uniform_index(rng, 1, g.cells()));
    for (int v = 0; v < 3; ++v) {
      const auto rows = stability_suite(phi, psi, k, t, 1.0, 0.1, n_max, mods[v], &vol);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        law[v].add(std::abs(rows[i].residual - rows[i].predicted) / rows[i].predicted);
        if (i > 0) {
          const double expect = static_cast<double>(rows[i - 1].n) / static_cast<double>(rows[i].n);
          ratio[v].add(std::abs(rows[i].residual / rows[i - 1].residual - expect));
        }
      }
    }
  }
  std::vector<Check> out;
  const char* names[3] = {"plain", "sigma", "wick"};
  for (int v = 0; v < 3; ++v) {
    out.push_back(make_check(std::string("one_over_n_") + names[v], law[v].worst, cfg.tolerance));
    out.push_back(make_check(std::string("ratio_") + names[v], ratio[v].worst, cfg.tolerance));
  }
  return out;
}

}  // namespace chaoscalc::harness
