#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "chaoscalc/donsker.hpp"

using namespace chaoscalc;

TEST(DonskerDelta, ZeroTermIsGaussianDensityAtZero) {
  const Grid g = Grid::make(1.0, 8);
  for (double t : {0.25, 0.5, 1.0}) {
    const ChaosVector d = donsker_delta(t, 0, g);
    EXPECT_EQ(d.max_order(), 0u);
    EXPECT_NEAR(d.expectation(), 1.0 / std::sqrt(2.0 * std::numbers::pi * t), 1e-15);
  }
}

TEST(DonskerDelta, OnlyEvenOrders) {
  const ChaosVector d = donsker_delta(0.5, 6, Grid::make(1.0, 8));
  EXPECT_EQ(d.max_order(), 12u);
  for (std::size_t n = 1; n <= 12; n += 2) EXPECT_FALSE(d.has_component(n));
  for (std::size_t n = 0; n <= 12; n += 2) EXPECT_TRUE(d.has_component(n));
}

TEST(DonskerDelta, NormMatchesSeriesAndLimit) {
  const Grid g = Grid::make(1.0, 32);
  const double n = gnorm(donsker_delta(1.0, 40, g), -1.0);
  EXPECT_NEAR(n * n, donsker_norm_series(1.0, 1.0, 40), 1e-15);
  EXPECT_NEAR(n * n, 0.16063, 1e-5);
}

TEST(DonskerDelta, Preconditions) {
  const Grid g = Grid::make(1.0, 8);
  EXPECT_THROW(donsker_delta(0.0, 3, g), std::invalid_argument);
  EXPECT_THROW(donsker_delta(0.3, 3, g), std::invalid_argument);
  EXPECT_THROW(donsker_norm_series(1.0, 0.0, 3), std::invalid_argument);
  EXPECT_THROW(donsker_process(g, 3, 0.0), std::invalid_argument);
}

TEST(DonskerSeries, LeadingTermScalingAndLimit) {
  EXPECT_NEAR(donsker_norm_series(0.7, 1.0, 0), 1.0 / (2.0 * std::numbers::pi * 0.7), 1e-15);
  for (double t : {0.3, 1.0, 2.5}) EXPECT_NEAR(donsker_norm_series(2 * t, 1.0, 40), donsker_norm_series(t, 1.0, 40) / 2, 1e-15);
  EXPECT_NEAR(donsker_norm_limit(1.0, 1.0), 1.0 / (2.0 * std::numbers::pi * std::sqrt(1.0 - std::exp(-4.0))), 1e-15);
  EXPECT_NEAR(donsker_norm_series(1.0, 1.0, 200), donsker_norm_limit(1.0, 1.0), 1e-14);
}

TEST(DonskerExperiment, DominatedAndFinite) {
  DonskerConfig c;
  c.n_terms = 8;
  c.cells = 32;
  const DonskerReport r = donsker_vmbv_experiment(c);
  EXPECT_TRUE(r.dominated);
  for (const auto& row : r.cells) EXPECT_LE(row.a3, row.bound);
  ASSERT_EQ(r.norms.size(), 3u);
  for (const auto& row : r.norms) EXPECT_TRUE(row.finite);
  EXPECT_TRUE(r.kg_sign_pattern);
}

TEST(DonskerExperiment, DegenerateKernelIsFinite) {
  DonskerConfig c;
  c.alpha = 0.0;
  c.n_terms = 6;
  c.cells = 16;
  const DonskerReport r = donsker_vmbv_experiment(c);
  for (const auto& row : r.cells) EXPECT_DOUBLE_EQ(row.a3, 0.0);
  for (const auto& row : r.norms) EXPECT_TRUE(row.finite);
}

TEST(DonskerExperiment, SmallCutoffFlagsDivergence) {
  DonskerConfig c;
  c.eps = 1.0 / 32;
  c.n_terms = 6;
  c.cells = 32;
  EXPECT_TRUE(donsker_vmbv_experiment(c).diverging_near_zero);
}
