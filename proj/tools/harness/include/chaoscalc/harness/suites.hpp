#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "chaoscalc/chaos_vector.hpp"

namespace chaoscalc::harness {

/// One measured quantity against its tolerance.
struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

/// Three significant digits, for messages.
std::string format_value(double v);

bool all_pass(const std::vector<Check>& checks);
/// The failing check with the largest value/tolerance ratio, else the largest overall.
const Check& worst(const std::vector<Check>& checks);

/// ||a - b|| / max(||a||, ||b||) in L^2 of the chaos space (0 when both vanish).
double relative_residual(const ChaosVector& a, const ChaosVector& b);

struct SuiteConfig {
  std::size_t cells = 8;
  double horizon = 1.0;
  std::size_t draws = 50;
  std::size_t max_order = 3;
  std::uint64_t seed = 20240601;
  double tolerance = 1e-10;
};

/// FTC, integration by parts, Wick and pointwise product rules, Skorohod
/// additivity, delta(1) = I_1(1), localization, linearity, pull-out.
std::vector<Check> identity_suite(const SuiteConfig& cfg);

/// Chaos-expansion oracles against the plain and Wick pipelines.
std::vector<Check> oracle_suite(const SuiteConfig& cfg);

/// Wick multiplicativity, Pettis interchange, Frechet finite differences,
/// S-transform oracles against the pipelines.
std::vector<Check> s_transform_suite(const SuiteConfig& cfg);

/// Explicit-constant norm estimates; value = number of violations.
std::vector<Check> norm_estimate_suite(const SuiteConfig& cfg);

/// Disjoint supports: wick == pointwise, strongind == wick; overlap rejected.
std::vector<Check> independence_suite(const SuiteConfig& cfg);

struct DonskerSuiteConfig {
  std::size_t n_terms = 40;
  std::size_t experiment_terms = 20;
  std::size_t cells = 64;
  double alpha = 1.0;
  double eps = 0.25;
  double t = 1.0;
  double lambda = 1.0;
  std::vector<double> lambdas{0.5, 1.0, 2.0};
};
std::vector<Check> donsker_suite(const DonskerSuiteConfig& cfg);

struct MonteCarloSuiteConfig {
  std::size_t cells = 16;
  std::size_t paths = 100000;
  std::size_t pathwise_paths = 2000;
  std::uint64_t seed = 77;
  unsigned threads = 1;
};
std::vector<Check> montecarlo_suite(const MonteCarloSuiteConfig& cfg);

struct FbmRow {
  double hurst = 0.0;
  double t = 0.0;
  double s = 0.0;
  double covariance = 0.0;
  double exact = 0.0;
  double rel_error = 0.0;
};
std::vector<FbmRow> fbm_covariance_table(const std::vector<double>& hursts,
                                         const std::vector<std::pair<double, double>>& pairs, std::size_t cells);
std::vector<Check> fbm_suite(std::size_t cells = 512, double tolerance = 0.05);

/// 1/n residual law for the plain, pointwise and Wick integrals.
std::vector<Check> stability_law_suite(const SuiteConfig& cfg);

}  // namespace chaoscalc::harness
