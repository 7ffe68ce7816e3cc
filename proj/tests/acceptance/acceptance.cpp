// Acceptance criteria, one PASS/FAIL line each.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "chaoscalc/harness/suites.hpp"

using namespace chaoscalc::harness;

namespace {

struct Criterion {
  std::string name;
  std::function<std::vector<Check>()> run;
};

std::string summarize(const std::vector<Check>& checks) {
  std::string s;
  for (const auto& c : checks) {
    if (c.pass) continue;
    s += (s.empty() ? "" : "; ") + c.name + "=" + format_value(c.value) + " > " + format_value(c.tolerance);
    if (!c.detail.empty()) s += " (" + c.detail + ")";
  }
  if (!s.empty()) return s;
  const Check& w = worst(checks);
  return std::to_string(checks.size()) + " checks, worst " + w.name + "=" + format_value(w.value) + " <= " +
         format_value(w.tolerance);
}

}  // namespace

int main() {
  SuiteConfig identities;
  identities.draws = 50;
  SuiteConfig oracles;
  oracles.draws = 20;
  SuiteConfig transforms;
  transforms.draws = 50;
  SuiteConfig norms;
  norms.draws = 200;
  SuiteConfig independence;
  independence.draws = 100;
  SuiteConfig stability;
  stability.draws = 20;
  MonteCarloSuiteConfig mc;
  mc.threads = std::max(1u, std::thread::hardware_concurrency());

  const std::vector<Criterion> criteria{
      {"discrete_identities", [&] { return identity_suite(identities); }},
      {"oracle_equivalence", [&] { return oracle_suite(oracles); }},
      {"s_transform", [&] { return s_transform_suite(transforms); }},
      {"norm_estimates", [&] { return norm_estimate_suite(norms); }},
      {"strong_independence", [&] { return independence_suite(independence); }},
      {"donsker_integrand", [] { return donsker_suite({}); }},
      {"monte_carlo", [&] { return montecarlo_suite(mc); }},
      {"fbm_covariance", [] { return fbm_suite(512, 0.05); }},
      {"stability_law", [&] { return stability_law_suite(stability); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<Check> checks;
    std::string error;
    try {
      checks = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = error.empty() && all_pass(checks);
    if (!pass) ++failures;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (pass ? "PASS " : "FAIL ") << c.name << ": " << (error.empty() ? summarize(checks) : "error: " + error)
              << " [" << timing << "]" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
