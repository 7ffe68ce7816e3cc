#include "chaoscalc/harness/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <atomic>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

#include "chaoscalc/donsker.hpp"
#include "chaoscalc/errors.hpp"
#include "chaoscalc/montecarlo.hpp"
#include "chaoscalc/harness/suites.hpp"

namespace chaoscalc::harness {

namespace {

using nlohmann::json;

json block(const ExperimentConfig& cfg, const char* name) {
  return cfg.extra.contains(name) ? cfg.extra.at(name) : json::object();
}

template <typename T>
T opt_field(const json& j, const char* key, T fallback, const char* where) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string(where) + "." + key + ": " + e.what());
  }
}

void add_checks(Table& t, const std::string& suite, const std::vector<Check>& checks) {
  for (const auto& c : checks) t.rows.push_back({suite, c.name, c.value, c.tolerance, c.pass, c.detail});
}

struct VmbvSetup {
  ChaosProcess phi;
  std::optional<ChaosProcess> vol;
};

VmbvSetup make_setup(const ExperimentConfig& cfg, const Grid& g) {
  VmbvSetup s{build_process(cfg.integrand, g, cfg.seed, 0), std::nullopt};
  if (cfg.volatility.process) s.vol = build_process(*cfg.volatility.process, g, cfg.seed, 1);
  return s;
}

VmbvResult run_point(const ExperimentConfig& cfg, const VmbvSetup& s, const VolterraKernel& k, double t,
                     double lambda) {
  VmbvOptions o;
  o.lambda = lambda;
  o.order_cap = cfg.truncation;
  return integrate(cfg.volatility.mode, s.phi, s.vol ? &*s.vol : nullptr, k, t, o);
}

double norm_sq(const ChaosVector& v, double lambda) {
  const double n = gnorm(v, lambda);
  return n * n;
}

}  // namespace

void write_csv(std::ostream& out, const Table& t) {
  CsvWriter w(out, t.header);
  for (const auto& r : t.rows) w.row(r);
}

json table_json(const Table& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    json o;
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::visit(
          [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, double>) {
              if (std::isfinite(v))
                o[t.header[i]] = v;
              else
                o[t.header[i]] = format_double(v);
            } else {
              o[t.header[i]] = v;
            }
          },
          r[i]);
    }
    rows.push_back(std::move(o));
  }
  return {{"name", t.name}, {"rows", std::move(rows)}};
}

ExperimentOutput run_identity_suite(const ExperimentConfig& cfg, const RunOptions&) {
  const json b = block(cfg, "suite");
  require_keys(b, {"cells", "draws", "max_order", "tolerance", "suites"}, "suite");
  SuiteConfig sc;
  sc.cells = opt_field<std::size_t>(b, "cells", 8, "suite");
  sc.horizon = cfg.horizon;
  sc.draws = opt_field<std::size_t>(b, "draws", 50, "suite");
  sc.max_order = opt_field<std::size_t>(b, "max_order", 3, "suite");
  sc.tolerance = opt_field<double>(b, "tolerance", 1e-10, "suite");
  sc.seed = cfg.seed;
  const auto names = opt_field<std::vector<std::string>>(b, "suites", {"identity"}, "suite");

  Table t{"identity_suite", {"suite", "check", "value", "tolerance", "pass", "detail"}, {}};
  for (const auto& n : names) {
    if (n == "identity")
      add_checks(t, n, identity_suite(sc));
    else if (n == "oracle")
      add_checks(t, n, oracle_suite(sc));
    else if (n == "s_transform")
      add_checks(t, n, s_transform_suite(sc));
    else if (n == "norm_estimates")
      add_checks(t, n, norm_estimate_suite(sc));
    else if (n == "independence")
      add_checks(t, n, independence_suite(sc));
    else if (n == "stability")
      add_checks(t, n, stability_law_suite(sc));
    else
      throw ConfigError("suite.suites: unknown suite '" + n + "'");
  }
  ExperimentOutput out;
  for (const auto& r : t.rows) {
    if (!std::get<bool>(r[4])) {
      out.status = 1;
      out.messages.push_back("check failed: " + std::get<std::string>(r[0]) + "/" + std::get<std::string>(r[1]));
    }
  }
  out.tables.push_back(std::move(t));
  return out;
}

ExperimentOutput run_donsker(const ExperimentConfig& cfg, const RunOptions&) {
  const json b = block(cfg, "donsker");
  require_keys(b, {"alpha", "eps", "t", "N", "lambda", "lambdas", "cells"}, "donsker");
  DonskerConfig dc;
  dc.alpha = opt_field<double>(b, "alpha", dc.alpha, "donsker");
  dc.eps = opt_field<double>(b, "eps", dc.eps, "donsker");
  dc.t = opt_field<double>(b, "t", dc.t, "donsker");
  dc.n_terms = opt_field<std::size_t>(b, "N", dc.n_terms, "donsker");
  dc.lambda = opt_field<double>(b, "lambda", dc.lambda, "donsker");
  dc.lambda_sweep = opt_field<std::vector<double>>(b, "lambdas", dc.lambda_sweep, "donsker");
  dc.cells = opt_field<std::size_t>(b, "cells", dc.cells, "donsker");
  dc.horizon = dc.t;
  const DonskerReport rep = donsker_vmbv_experiment(dc);

  ExperimentOutput out;
  Table cells{"donsker_cells", {"cell", "s", "a3", "bound", "dominated"}, {}};
  for (const auto& r : rep.cells)
    cells.rows.push_back({static_cast<long long>(r.cell), r.s, r.a3, r.bound, r.a3 <= r.bound});
  Table norms{"donsker_norms", {"lambda", "norm_sq", "finite", "delta_series", "delta_limit"}, {}};
  for (const auto& r : rep.norms) {
    norms.rows.push_back({r.lambda, r.norm_sq, r.finite, donsker_norm_series(dc.t, r.lambda, dc.n_terms),
                          donsker_norm_limit(dc.t, r.lambda)});
    if (!r.finite) {
      out.status = 3;
      out.messages.push_back("gate kg_energy: non-finite norm at lambda " + format_double(r.lambda));
    }
  }
  Table kg{"donsker_kg", {"order", "coefficient", "sign_pattern", "diverging_near_zero"}, {}};
  for (std::size_t n = 0; n < rep.kg_even_coefficients.size(); ++n)
    kg.rows.push_back({static_cast<long long>(2 * n), rep.kg_even_coefficients[n], rep.kg_sign_pattern,
                       rep.diverging_near_zero});
  if (!rep.dominated) {
    out.status = std::max(out.status, 1);
    out.messages.push_back("increment variation exceeds its bound");
  }
  out.tables = {std::move(cells), std::move(norms), std::move(kg)};
  return out;
}

ExperimentOutput run_fbm_cov(const ExperimentConfig& cfg, const RunOptions&) {
  const json b = block(cfg, "fbm");
  require_keys(b, {"H", "pairs", "tolerance"}, "fbm");
  std::vector<double> hursts{0.6, 0.7, 0.8};
  const VolterraKernel k = cfg.volterra();
  if (k.kind() == KernelKind::fbm) hursts = {k.hurst()};
  hursts = opt_field<std::vector<double>>(b, "H", hursts, "fbm");
  const auto pairs = opt_field<std::vector<std::pair<double, double>>>(
      b, "pairs", {{1.0, 0.5}, {1.0, 0.25}, {0.75, 0.5}}, "fbm");
  const double tol = opt_field<double>(b, "tolerance", 0.05, "fbm");
  for (const auto& [t, s] : pairs)
    if (!(s > 0.0 && t > 0.0 && t <= cfg.horizon && s <= cfg.horizon)) throw ConfigError("fbm.pairs outside (0, T]");
  for (double h : hursts)
    if (!(h > 0.0 && h < 1.0)) throw ConfigError("fbm.H must lie in (0, 1)");

  ExperimentOutput out;
  Table t{"fbm_cov", {"H", "t", "s", "covariance", "exact", "rel_error", "pass"}, {}};
  for (const auto& r : fbm_covariance_table(hursts, pairs, cfg.cells)) {
    t.rows.push_back({r.hurst, r.t, r.s, r.covariance, r.exact, r.rel_error, r.rel_error <= tol});
    if (r.rel_error > tol) out.status = 1;
  }
  out.tables.push_back(std::move(t));
  return out;
}

ExperimentOutput run_mc_compare(const ExperimentConfig& cfg, const RunOptions& opt) {
  const json b = block(cfg, "mc");
  require_keys(b, {"samples"}, "mc");
  const auto samples = opt_field<std::size_t>(b, "samples", 100000, "mc");
  const Grid g = cfg.grid();
  const VmbvSetup s = make_setup(cfg, g);
  const VolterraKernel k = cfg.volterra();
  const ChaosVector x = run_point(cfg, s, k, cfg.t, cfg.lambdas.front()).value;
  const MomentEstimate est = mc_moments(x, samples, cfg.seed, opt.threads);
  const double mean_ref = x.expectation();
  const double var_ref = norm_sq(x, 0.0) - mean_ref * mean_ref;

  Table t{"mc_compare",
          {"experiment", "n_samples", "mean", "se_mean", "var", "se_var", "reference", "z_score"},
          {}};
  auto z = [](double v, double ref, double se) {
    if (se > 0.0) return (v - ref) / se;
    return v == ref ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), v - ref);
  };
  const auto n = static_cast<long long>(est.samples);
  t.rows.push_back({"mean", n, est.mean, est.se_mean, est.variance, est.se_variance, mean_ref,
                    z(est.mean, mean_ref, est.se_mean)});
  t.rows.push_back({"variance", n, est.mean, est.se_mean, est.variance, est.se_variance, var_ref,
                    z(est.variance, var_ref, est.se_variance)});
  ExperimentOutput out;
  out.tables.push_back(std::move(t));
  return out;
}

ExperimentOutput run_vmbv(const ExperimentConfig& cfg, const RunOptions&) {
  const Grid g = cfg.grid();
  const VmbvSetup s = make_setup(cfg, g);
  const VolterraKernel k = cfg.volterra();
  Table t{"vmbv",
          {"lambda", "t", "modulation", "max_order", "expectation", "norm_sq", "skorohod_norm_sq", "drift_norm_sq",
           "diagonal_energy", "increment_energy", "kg_energy", "clipped"},
          {}};
  for (double lambda : cfg.lambdas) {
    const VmbvResult r = run_point(cfg, s, k, cfg.t, lambda);
    const auto& d = r.diagnostics.kernel;
    t.rows.push_back({lambda, cfg.t, to_string(r.modulation), static_cast<long long>(r.value.max_order()),
                      r.value.expectation(), norm_sq(r.value, -lambda), norm_sq(r.skorohod_part, -lambda),
                      norm_sq(r.drift_part, -lambda), d.b4, d.b5, d.aggregate, d.clipped});
  }
  ExperimentOutput out;
  out.tables.push_back(std::move(t));
  return out;
}

ExperimentOutput run_sweep(const ExperimentConfig& cfg, const RunOptions& opt) {
  const json b = block(cfg, "sweep");
  require_keys(b, {"lambda", "t", "M"}, "sweep");
  const auto lambdas = opt_field<std::vector<double>>(b, "lambda", cfg.lambdas, "sweep");
  const auto times = opt_field<std::vector<double>>(b, "t", {cfg.t}, "sweep");
  const auto sizes = opt_field<std::vector<std::size_t>>(b, "M", {cfg.cells}, "sweep");
  if (lambdas.empty() || times.empty() || sizes.empty()) throw ConfigError("sweep: empty axis");
  for (double t : times)
    if (!(t > 0.0 && t <= cfg.horizon)) throw ConfigError("sweep.t must lie in (0, grid.T]");
  const VolterraKernel k = cfg.volterra();

  struct Point {
    std::size_t m;
    double t;
    double lambda;
  };
  std::vector<Point> points;
  for (auto m : sizes)
    for (double t : times)
      for (double l : lambdas) points.push_back({m, t, l});

  std::map<std::size_t, VmbvSetup> setups;
  for (auto m : sizes) {
    ExperimentConfig c = cfg;
    c.cells = m;
    setups.emplace(m, make_setup(c, c.grid()));
  }

  std::vector<std::vector<CsvField>> rows(points.size());
  std::vector<std::string> failures(points.size());
  std::vector<int> codes(points.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      const Point& p = points[i];
      std::string status = "ok";
      double ns = std::numeric_limits<double>::quiet_NaN(), mean = ns;
      long long order = -1;
      try {
        const VmbvResult r = run_point(cfg, setups.at(p.m), k, p.t, p.lambda);
        ns = norm_sq(r.value, -p.lambda);
        mean = r.value.expectation();
        order = static_cast<long long>(r.value.max_order());
      } catch (const IntegrabilityViolation& e) {
        status = "gate:" + e.assumption();
        codes[i] = 3;
        failures[i] = e.what();
      } catch (const IndependenceViolation& e) {
        status = "gate:independence";
        codes[i] = 3;
        failures[i] = e.what();
      } catch (const TruncationOverflow& e) {
        status = "overflow";
        codes[i] = 4;
        failures[i] = e.what();
      }
      rows[i] = {static_cast<long long>(p.m), p.t, p.lambda, to_string(cfg.volatility.mode), order, mean, ns, status};
    }
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(points.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < n_threads; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  ExperimentOutput out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (codes[i] == 0) continue;
    out.status = std::max(out.status, codes[i]);
    out.messages.push_back(failures[i]);
  }
  out.tables.push_back(
      {"sweep", {"M", "t", "lambda", "modulation", "max_order", "expectation", "norm_sq", "status"}, std::move(rows)});
  return out;
}

}  // namespace chaoscalc::harness
