#include <gtest/gtest.h>

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "chaoscalc/kg_operator.hpp"
#include "chaoscalc/random_chaos.hpp"
#include "chaoscalc/volterra_kernel.hpp"

using namespace chaoscalc;

TEST(VolterraKernel, ClosedForms) {
  EXPECT_NEAR(VolterraKernel::ou(2.0)(1.0, 0.5), std::exp(-1.0), 1e-15);
  const VolterraKernel bm = VolterraKernel::fbm(0.5);
  for (double s : {0.01, 0.3, 0.9}) EXPECT_NEAR(bm(1.0, s), 1.0, 1e-14);
  const VolterraKernel turb = VolterraKernel::turbulence(1.0, 1.0);
  for (double s : {0.0, 0.3, 0.9}) EXPECT_NEAR(turb(1.0, s), std::exp(-(1.0 - s)), 1e-15);
}

TEST(VolterraKernel, RejectsBadParameters) {
  EXPECT_THROW(VolterraKernel::ou(-1.0), std::invalid_argument);
  EXPECT_THROW(VolterraKernel::turbulence(1.0, 0.4), std::invalid_argument);
  EXPECT_THROW(VolterraKernel::fbm(1.2), std::invalid_argument);
  EXPECT_THROW(VolterraKernel::from_json(nlohmann::json{{"kind", "levy"}}), std::invalid_argument);
}

TEST(VolterraKernel, JsonRoundTrip) {
  for (const auto& k : {VolterraKernel::ou(1.5), VolterraKernel::turbulence(2.0, 0.8), VolterraKernel::fbm(0.7)}) {
    const VolterraKernel back = VolterraKernel::from_json(k.to_json());
    EXPECT_EQ(back.name(), k.name());
    EXPECT_DOUBLE_EQ(back(0.9, 0.2), k(0.9, 0.2));
  }
}

TEST(KernelMeasure, OuWeightsTelescope) {
  const Grid g = Grid::make(1.0, 32);
  const VolterraKernel k = VolterraKernel::ou(1.7);
  const double s = 0.1;
  const KernelMeasure m = kernel_measure(k, g, s, 0.25, 0.875);
  double sum = 0.0;
  for (const auto& [cell, w] : m.weights) sum += w;
  EXPECT_NEAR(sum, std::exp(-1.7 * (0.875 - s)) - std::exp(-1.7 * (0.25 - s)), 1e-14);
  EXPECT_NEAR(m.total_variation, std::abs(sum), 1e-14);
}

TEST(KernelMeasure, ConstantTableHasNoMass) {
  const Grid g = Grid::make(1.0, 8);
  const VolterraKernel k = VolterraKernel::table(g, std::vector<std::vector<double>>(9, std::vector<double>(8, 2.0)));
  const KernelMeasure m = kernel_measure(k, g, 0.05, 0.125, 1.0);
  for (const auto& [cell, w] : m.weights) EXPECT_DOUBLE_EQ(w, 0.0);
  EXPECT_DOUBLE_EQ(m.total_variation, 0.0);
}

TEST(KernelMeasure, TurbulenceVariationMatchesQuadrature) {
  const VolterraKernel k = VolterraKernel::turbulence(1.0, 2.0);
  const double s = 0.2, lo = 0.25, hi = 2.9;
  auto abs_density = [&](double u) { return std::abs(k.density(u, s)); };
  const double peak = s + 1.0;
  const double quad = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(abs_density, lo, peak, 10, 1e-13) +
                      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(abs_density, peak, hi, 10, 1e-13);
  EXPECT_NEAR(k.variation(s, lo, hi), quad, 1e-6);
  const Grid g = Grid::make(3.0, 48);
  EXPECT_NEAR(kernel_measure(k, g, s, 0.25, 2.875).total_variation, k.variation(s, 0.25, 2.875), 1e-6);
}

TEST(Kg, UnitKernelIsIdentity) {
  const Grid g = Grid::make(1.0, 8);
  Rng rng = make_rng(1);
  const ChaosProcess phi = random_process(g, rng, 2, 0.5);
  const ChaosProcess k = kg_apply(phi, VolterraKernel::fbm(0.5), 1.0);
  for (CellIndex j = 0; j < 8; ++j) EXPECT_NEAR(gnorm(k.at(j) - phi.at(j), 0.0), 0.0, 1e-14);
}

TEST(Kg, ConstantIntegrandGivesKernel) {
  const Grid g = Grid::make(1.0, 16);
  const double alpha = 1.3, t = 0.75;
  const ChaosProcess one = ChaosProcess::constant(ChaosVector::constant(1.0, g));
  const KgPlan plan = make_kg_plan(VolterraKernel::ou(alpha), g, t);
  const ChaosProcess k = kg_apply(one, plan);
  for (std::size_t i = 0; i < 16; ++i) {
    const double expect = i < plan.cells ? std::exp(-alpha * (t - plan.sample_point[i])) : 0.0;
    EXPECT_NEAR(k.at(static_cast<CellIndex>(i)).expectation(), expect, 1e-14);
  }
}

TEST(Kg, DeterministicRampMatchesClosedForm) {
  const std::size_t m = 256;
  const Grid g = Grid::make(1.0, m);
  const ChaosProcess ramp =
      ChaosProcess::generate(g, [&](CellIndex j) { return ChaosVector::constant((j + 0.5) * g.step(), g); });
  const KgPlan plan = make_kg_plan(VolterraKernel::ou(1.0), g, 1.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double s = plan.sample_point[i], a = 1.0 - s;
    // s g(1,s) + int_s^1 (u - s) d_u e^{-(u-s)}
    const double exact = s * std::exp(-a) - (1.0 - std::exp(-a) * (1.0 + a));
    worst = std::max(worst, std::abs(kg_value(plan, ramp, i).expectation() - exact));
  }
  EXPECT_LT(worst, 1e-4);
}

TEST(AssumptionReport, ConstantIntegrand) {
  const Grid g = Grid::make(1.0, 32);
  const double alpha = 2.0;
  const ChaosProcess one = ChaosProcess::constant(ChaosVector::constant(1.0, g));
  const AssumptionReport r = assumption_report(one, VolterraKernel::ou(alpha), 1.0, 1.0);
  for (double v : r.a3) EXPECT_DOUBLE_EQ(v, 0.0);
  EXPECT_LE(r.b4, (1.0 - std::exp(-2.0 * alpha)) / (2.0 * alpha));
  EXPECT_TRUE(r.finite());
  EXPECT_FALSE(r.first_failure().has_value());
}

TEST(AssumptionReport, BoundedIntegrandBound) {
  const Grid g = Grid::make(1.0, 16);
  Rng rng = make_rng(3);
  const ChaosProcess phi = random_process(g, rng, 2, 0.5);
  double sup = 0.0;
  for (const auto& v : phi.values()) sup = std::max(sup, std::pow(gnorm(v, -1.0), 2));
  const AssumptionReport r = assumption_report(phi, VolterraKernel::ou(1.0), 1.0, 1.0);
  EXPECT_LE(r.b4, sup * (1.0 - std::exp(-2.0)) / 2.0);
}
