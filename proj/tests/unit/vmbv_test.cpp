#include <gtest/gtest.h>

#include <cmath>

#include "chaoscalc/errors.hpp"
#include "chaoscalc/montecarlo.hpp"
#include "chaoscalc/operators.hpp"
#include "chaoscalc/random_chaos.hpp"
#include "chaoscalc/vmbv_integral.hpp"
#include "chaoscalc/vmbv_oracles.hpp"

using namespace chaoscalc;

namespace {
const Grid g8 = Grid::make(1.0, 8);
const VolterraKernel unit = VolterraKernel::ou(0.0);

double rel(const ChaosVector& a, const ChaosVector& b) {
  const double d = gnorm(a - b, 0.0);
  return d == 0.0 ? 0.0 : d / std::max(gnorm(a, 0.0), gnorm(b, 0.0));
}

ChaosProcess constant(double c) { return ChaosProcess::constant(ChaosVector::constant(c, g8)); }

ChaosProcess brownian() {
  return ChaosProcess::generate(g8, [](CellIndex j) {
    return j == 0 ? ChaosVector(g8) : ChaosVector::single(SymKernel::indicator(g8, 0, j));
  });
}
}  // namespace

TEST(IntegratePlain, ConstantIntegrandIsVolterraProcess) {
  const VolterraKernel k = VolterraKernel::ou(1.5);
  const double t = 0.75;
  const VmbvResult r = integrate_plain(constant(1.0), k, t);
  EXPECT_TRUE(r.drift_part.is_zero());
  const KgPlan plan = make_kg_plan(k, g8, t);
  std::vector<double> f(8, 0.0);
  for (std::size_t i = 0; i < plan.cells; ++i) f[i] = plan.g_t[i];
  EXPECT_LT(rel(r.value, ChaosVector::single(SymKernel::from_values(g8, f))), 1e-14);
}

TEST(IntegratePlain, AdaptedMatchesItoPathwise) {
  Rng rng = make_rng(12);
  const ChaosProcess phi = random_adapted_process(g8, rng, 2, 0.6);
  const VmbvResult r = integrate_plain(phi, unit, 1.0);
  EXPECT_LT(rel(r.value, r.skorohod_part), 1e-14);
  for (std::uint64_t p = 0; p < 50; ++p) {
    const NoiseVector w = sample_noise(g8, 5, p);
    EXPECT_NEAR(evaluate(r.value, w), ito_oracle(phi, w), 1e-10);
  }
}

TEST(IntegratePlain, BrownianIntegrand) {
  const VmbvResult r = integrate_plain(brownian(), unit, 1.0);
  EXPECT_NEAR(r.value.expectation(), 0.0, 1e-15);
  EXPECT_NEAR(r.drift_part.expectation(), 0.0, 1e-15);
  EXPECT_LT(rel(r.value, chaos_formula_oracle(brownian(), unit, 1.0)), 1e-14);
}

TEST(IntegratePlain, Decomposition) {
  Rng rng = make_rng(13);
  const ChaosProcess phi = random_process(g8, rng, 3, 0.5);
  const VmbvResult r = integrate_plain(phi, VolterraKernel::turbulence(1.0, 0.8), 0.875);
  EXPECT_LT(rel(r.value, r.skorohod_part + r.drift_part), 1e-15);
}

TEST(IntegrateSigma, UnitAndDeterministicVolatility) {
  Rng rng = make_rng(14);
  const ChaosProcess phi = random_process(g8, rng, 2, 0.5);
  const VolterraKernel k = VolterraKernel::ou(0.8);
  EXPECT_LT(rel(integrate_sigma(phi, constant(1.0), k, 1.0).value, integrate_plain(phi, k, 1.0).value), 1e-14);
  const std::vector<double> sig{1, 2, 0.5, -1, 3, 1, 2, 0.25};
  const ChaosProcess sigma = ChaosProcess::generate(g8, [&](CellIndex j) { return ChaosVector::constant(sig[j], g8); });
  const KgPlan plan = make_kg_plan(k, g8, 1.0);
  std::vector<double> f(8);
  for (std::size_t i = 0; i < 8; ++i) f[i] = plan.g_t[i] * sig[i];
  EXPECT_LT(rel(integrate_sigma(constant(1.0), sigma, k, 1.0).value,
                ChaosVector::single(SymKernel::from_values(g8, f))),
            1e-14);
}

TEST(IntegrateWick, ConstantVolatilityScales) {
  Rng rng = make_rng(15);
  const ChaosProcess phi = random_process(g8, rng, 2, 0.5);
  const VolterraKernel k = VolterraKernel::fbm(0.7);
  const ChaosVector plain = integrate_plain(phi, k, 1.0).value;
  EXPECT_LT(rel(integrate_wick(phi, constant(1.0), k, 1.0).value, plain), 1e-14);
  EXPECT_LT(rel(integrate_wick(phi, constant(-2.5), k, 1.0).value, plain.scaled(-2.5)), 1e-14);
}

TEST(IntegrateStrongind, DisjointSupportsAgreeWithWick) {
  Rng rng = make_rng(16);
  const ChaosProcess phi = random_process_on(g8, rng, 2, 0.6, {0, 8}, {0, 4});
  const ChaosProcess vol = random_process_on(g8, rng, 1, 0.6, {0, 8}, {4, 8});
  EXPECT_TRUE(integrate_strongind(phi, vol, unit, 1.0).value == integrate_wick(phi, vol, unit, 1.0).value);
}

TEST(IntegrateStrongind, OverlapIsRejected) {
  const ChaosProcess b = brownian();
  EXPECT_THROW(integrate_strongind(b, b, unit, 1.0), IndependenceViolation);
  try {
    integrate_strongind(b, b, unit, 1.0);
  } catch (const IndependenceViolation& e) {
    EXPECT_GE(e.cell(), 1);
  }
}

TEST(IntegrateStrongind, DeterministicVolatilityPasses) {
  const ChaosProcess b = brownian();
  EXPECT_LT(rel(integrate_strongind(b, constant(3.0), unit, 1.0).value, integrate_plain(b, unit, 1.0).value.scaled(3.0)),
            1e-14);
}

TEST(Integrate, OrderCapOverflowThrows) {
  Rng rng = make_rng(17);
  const ChaosProcess phi = random_process(g8, rng, 3, 0.5);
  VmbvOptions opt;
  opt.order_cap = 2;
  EXPECT_THROW(integrate_plain(phi, unit, 1.0, opt), TruncationOverflow);
}

TEST(Integrate, NonFiniteNormTripsGate) {
  EXPECT_THROW(integrate_plain(constant(1e300), VolterraKernel::ou(1.0), 1.0), IntegrabilityViolation);
}

TEST(Integrate, ModulationNames) {
  for (Modulation m : {Modulation::none, Modulation::pointwise, Modulation::wick, Modulation::strongind})
    EXPECT_EQ(modulation_from_string(to_string(m)), m);
  EXPECT_THROW(modulation_from_string("ito"), std::invalid_argument);
  EXPECT_THROW(integrate(Modulation::wick, constant(1.0), nullptr, unit, 1.0), std::invalid_argument);
}

TEST(Oracles, STransformOfConstantIntegrand) {
  const VolterraKernel k = VolterraKernel::ou(1.0);
  std::vector<double> xv{0.3, -1, 2, 0.5, 0, 1, -0.2, 0.7};
  const TestFunctionXi xi(g8, xv);
  const ChaosVector x1 = integrate_plain(constant(1.0), k, 1.0).value;
  EXPECT_NEAR(s_transform_oracle(constant(1.0), k, 1.0, xi), s_transform(x1, xi), 1e-14);
  Rng rng = make_rng(18);
  const ChaosProcess phi = random_process(g8, rng, 2, 0.5);
  const VmbvResult r = integrate_plain(phi, k, 1.0);
  EXPECT_NEAR(s_transform_oracle(phi, k, 1.0, TestFunctionXi::zero(g8)), r.value.expectation(), 1e-13);
}

TEST(Oracles, WickChaosFormula) {
  Rng rng = make_rng(19);
  const ChaosProcess phi = random_process(g8, rng, 2, 0.5);
  const ChaosProcess vol = random_process(g8, rng, 1, 0.5);
  const VolterraKernel k = VolterraKernel::turbulence(1.0, 1.5);
  EXPECT_LT(rel(chaos_formula_oracle_wick(phi, vol, k, 0.625), integrate_wick(phi, vol, k, 0.625).value), 1e-12);
}

TEST(Stability, ZeroPerturbationAndRatio) {
  Rng rng = make_rng(20);
  const ChaosProcess phi = random_process(g8, rng, 2, 0.5);
  const ChaosProcess psi = random_process(g8, rng, 2, 0.5);
  const VolterraKernel k = VolterraKernel::ou(1.0);
  for (const auto& row : stability_suite(phi, ChaosProcess(g8), k, 1.0, 1.0, 0.1, 4)) EXPECT_EQ(row.residual, 0.0);
  const auto rows = stability_suite(phi, psi, k, 1.0, 1.0, 0.1, 5);
  for (std::size_t i = 1; i < rows.size(); ++i)
    EXPECT_NEAR(rows[i].residual / rows[i - 1].residual, double(rows[i - 1].n) / double(rows[i].n), 1e-12);
}

TEST(Oracles, AdaptedVolatilityHasNoDiagonalDerivative) {
  Rng rng = make_rng(21);
  const ChaosProcess phi = random_process(g8, rng, 2, 0.5);
  const ChaosProcess vol = random_adapted_process(g8, rng, 2, 0.6);
  for (CellIndex s = 0; s < 8; ++s) EXPECT_TRUE(derivative_at(vol.at(s), s).is_zero());
  std::vector<double> xv{0.3, -1, 2, 0.5, 0, 1, -0.2, 0.7};
  const TestFunctionXi xi(g8, xv);
  const VolterraKernel k = VolterraKernel::ou(0.6);
  const ChaosVector w = integrate_wick(phi, vol, k, 1.0).value;
  EXPECT_NEAR(s_transform_oracle(phi, k, 1.0, xi, &vol), s_transform(w, xi), 1e-12 * std::max(1.0, std::abs(s_transform(w, xi))));
}
