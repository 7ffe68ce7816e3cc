#include <gtest/gtest.h>

#include <cmath>

#include "chaoscalc/montecarlo.hpp"
#include "chaoscalc/random_chaos.hpp"
#include "chaoscalc/vmbv_integral.hpp"

using namespace chaoscalc;

namespace {
const Grid g8 = Grid::make(1.0, 8);
}

TEST(Noise, Reproducible) {
  const NoiseVector a = sample_noise(g8, 3, 17), b = sample_noise(g8, 3, 17);
  EXPECT_EQ(a.xi(), b.xi());
  EXPECT_NE(a.xi(), sample_noise(g8, 3, 18).xi());
}

TEST(Noise, MomentsOfIncrements) {
  const std::size_t n = 100000;
  double mean = 0.0, sq = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    const NoiseVector w = sample_noise(g8, 4, p);
    mean += w.xi()[0];
    sq += std::pow(w.brownian(8), 2);
  }
  EXPECT_LT(std::abs(mean / n), 3.0 * std::pow(10.0, -2.5));
  EXPECT_NEAR(sq / n, 1.0, 0.05);
}

TEST(Evaluate, Examples) {
  const NoiseVector w = sample_noise(g8, 5, 0);
  EXPECT_DOUBLE_EQ(evaluate(ChaosVector::constant(2.5, g8), w), 2.5);
  double b = 0.0;
  for (double x : w.xi()) b += std::sqrt(g8.step()) * x;
  EXPECT_NEAR(evaluate(ChaosVector::single(SymKernel::indicator(g8, 0, 8)), w), b, 1e-14);
  EXPECT_NEAR(w.brownian(8), b, 1e-14);
}

TEST(Evaluate, BlocksMatchMaterialized) {
  const SymKernel cube = SymKernel::prefix_cube(3, g8, 0.9, 6);
  const SymKernel cc = SymKernel::prefix_cube_cell(4, g8, -0.3, 5, 6);
  for (std::uint64_t p = 0; p < 10; ++p) {
    const NoiseVector w = sample_noise(g8, 6, p);
    for (const SymKernel* k : {&cube, &cc})
      EXPECT_NEAR(evaluate(ChaosVector::single(*k), w), evaluate(ChaosVector::single(k->materialized()), w), 1e-12);
  }
}

TEST(Hermite, LowOrders) {
  EXPECT_DOUBLE_EQ(hermite_he(0, 1.3), 1.0);
  EXPECT_DOUBLE_EQ(hermite_he(1, 1.3), 1.3);
  EXPECT_NEAR(hermite_he(2, 1.3), 1.3 * 1.3 - 1.0, 1e-15);
  EXPECT_NEAR(hermite_he(3, 1.3), std::pow(1.3, 3) - 3 * 1.3, 1e-14);
}

TEST(ItoOracle, ConstantAndGate) {
  const NoiseVector w = sample_noise(g8, 7, 0);
  EXPECT_NEAR(ito_oracle(ChaosProcess::constant(ChaosVector::constant(1.0, g8)), w), w.brownian(8), 1e-14);
  const ChaosProcess future = ChaosProcess::generate(g8, [](CellIndex j) {
    return ChaosVector::single(SymKernel::indicator(g8, j, 8));
  });
  EXPECT_THROW(ito_oracle(future, w), std::invalid_argument);
}

TEST(ItoOracle, BrownianIntegrandMatchesPipeline) {
  const ChaosProcess b = ChaosProcess::generate(g8, [](CellIndex j) {
    return j == 0 ? ChaosVector(g8) : ChaosVector::single(SymKernel::indicator(g8, 0, j));
  });
  const ChaosVector v = integrate_plain(b, VolterraKernel::ou(0.0), 1.0).value;
  for (std::uint64_t p = 0; p < 100; ++p) {
    const NoiseVector w = sample_noise(g8, 8, p);
    EXPECT_NEAR(evaluate(v, w), ito_oracle(b, w), 1e-10);
  }
}

TEST(McMoments, Examples) {
  const MomentEstimate c = mc_moments(ChaosVector::constant(1.5, g8), 1000, 1);
  EXPECT_DOUBLE_EQ(c.mean, 1.5);
  EXPECT_DOUBLE_EQ(c.variance, 0.0);
  const Grid g = Grid::make(1.0, 4);
  const MomentEstimate b = mc_moments(ChaosVector::single(SymKernel::indicator(g, 0, 4)), 100000, 2);
  EXPECT_LT(std::abs(b.variance - 1.0), 3.0 * b.se_variance);
  EXPECT_THROW(mc_moments(ChaosVector::constant(1.0, g8), 1, 1), std::invalid_argument);
}

TEST(McMoments, FbmVariance) {
  const Grid g = Grid::make(1.0, 64);
  const ChaosVector x = integrate_plain(ChaosProcess::constant(ChaosVector::constant(1.0, g)), VolterraKernel::fbm(0.7), 1.0).value;
  const MomentEstimate e = mc_moments(x, 100000, 3, 2);
  EXPECT_LT(std::abs(e.variance - 1.0), 3.0 * e.se_variance + 0.05);
}

TEST(McMoments, ThreadCountDoesNotChangeResult) {
  Rng rng = make_rng(9);
  const ChaosVector v = random_vector(g8, rng, 3, 0.4);
  const MomentEstimate a = mc_moments(v, 5000, 10, 1), b = mc_moments(v, 5000, 10, 4);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.variance, b.variance);
  EXPECT_EQ(a.se_variance, b.se_variance);
}
