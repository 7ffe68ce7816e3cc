#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "chaoscalc/grid.hpp"
#include "chaoscalc/random_chaos.hpp"
#include "chaoscalc/serialization.hpp"
#include "chaoscalc/sym_kernel.hpp"

using namespace chaoscalc;

TEST(Grid, StepAndCell) {
  const Grid g = Grid::make(1.0, 8);
  EXPECT_DOUBLE_EQ(g.step(), 0.125);
  EXPECT_EQ(g.cell_of(0.3), 2u);
  const Grid one = Grid::make(2.0, 1);
  EXPECT_DOUBLE_EQ(one.step(), 2.0);
  EXPECT_EQ(one.cell_of(1.99), 0u);
  EXPECT_THROW(Grid::make(1.0, 0), std::invalid_argument);
  EXPECT_THROW(Grid::make(-1.0, 4), std::invalid_argument);
}

TEST(Grid, BoundaryIndexSnaps) {
  const Grid g = Grid::make(1.0, 64);
  EXPECT_EQ(g.boundary_index(0.25), 16u);
  EXPECT_EQ(g.boundary_index(1.0), 64u);
  EXPECT_EQ(g.boundary_index(0.3), 19u);
}

TEST(SymKernel, PositionalIngestAverages) {
  const Grid g = Grid::make(1.0, 8);
  std::vector<std::pair<Tuple, double>> raw{{{0, 1}, 1.0}, {{1, 0}, 0.0}};
  const SymKernel k = SymKernel::from_entries(2, g, raw, Ingest::positional);
  ASSERT_EQ(k.entries().size(), 1u);
  EXPECT_DOUBLE_EQ(k.entries().at({0, 1}), 0.5);
}

TEST(SymKernel, CanonicalIngestKeepsEntries) {
  const Grid g = Grid::make(1.0, 8);
  std::vector<std::pair<Tuple, double>> raw{{{3}, 2.0}};
  const SymKernel k = SymKernel::from_entries(1, g, raw, Ingest::canonical);
  EXPECT_DOUBLE_EQ(k.entries().at({3}), 2.0);
}

TEST(SymKernel, RejectsOutOfRangeIndex) {
  const Grid g = Grid::make(1.0, 8);
  std::vector<std::pair<Tuple, double>> raw{{{0, 9}, 1.0}};
  EXPECT_THROW(SymKernel::from_entries(2, g, raw, Ingest::canonical), std::invalid_argument);
}

TEST(SymKernel, InnerProductExamples) {
  const Grid g4 = Grid::make(1.0, 4);
  const SymKernel one = SymKernel::indicator(g4, 0, 4);
  EXPECT_DOUBLE_EQ(inner_product(one, one), 1.0);
  EXPECT_DOUBLE_EQ(inner_product(SymKernel::scalar(3.0, g4), SymKernel::scalar(2.0, g4)), 6.0);
  const Grid g2 = Grid::make(1.0, 2);
  std::vector<std::pair<Tuple, double>> raw{{{0, 1}, 1.0}};
  const SymKernel f = SymKernel::from_entries(2, g2, raw, Ingest::canonical);
  EXPECT_DOUBLE_EQ(inner_product(f, f), 0.5);
}

TEST(SymKernel, BlocksAgreeWithMaterialized) {
  const Grid g = Grid::make(1.0, 6);
  const SymKernel cube = SymKernel::prefix_cube(3, g, 0.7, 4);
  const SymKernel cc = SymKernel::prefix_cube_cell(3, g, -1.3, 3, 5);
  Rng rng = make_rng(5);
  const SymKernel sparse = random_kernel(3, g, rng, 0.6);
  for (const SymKernel* a : {&cube, &cc, &sparse}) {
    for (const SymKernel* b : {&cube, &cc, &sparse}) {
      EXPECT_NEAR(inner_product(*a, *b), inner_product(a->materialized(), b->materialized()), 1e-13);
    }
    EXPECT_NEAR(a->norm_sq(), a->materialized().norm_sq(), 1e-13);
    for (CellIndex j = 0; j < 6; ++j) {
      const SymKernel s1 = a->slice(j), s2 = a->materialized().slice(j);
      EXPECT_LE((s1 - s2).norm_sq(), 1e-26 + 1e-14 * s2.norm_sq());
    }
  }
}

TEST(SymKernel, NormSqOfIndicatorCube) {
  const Grid g = Grid::make(1.0, 5);
  // |1_[0,1)^{x3}|^2 = 1
  EXPECT_NEAR(SymKernel::prefix_cube(3, g, 1.0, 5).norm_sq(), 1.0, 1e-14);
  EXPECT_NEAR(SymKernel::prefix_cube(3, g, 1.0, 5).materialized().norm_sq(), 1.0, 1e-14);
}

TEST(SymKernel, MultiplicityAndCounts) {
  const Tuple t{0, 0, 1};
  EXPECT_DOUBLE_EQ(multiplicity(t), 3.0);
  EXPECT_DOUBLE_EQ(multiset_count(2, 3), 6.0);
  EXPECT_DOUBLE_EQ(factorial(5), 120.0);
  std::size_t n = 0;
  for_each_multiset(3, 4, [&](const Tuple&) { ++n; });
  EXPECT_EQ(n, 20u);
}

TEST(Serialization, KernelRoundTripsBitExactly) {
  const Grid g = Grid::make(1.3, 7);
  Rng rng = make_rng(11);
  const SymKernel k = random_kernel(3, g, rng, 0.5) + SymKernel::prefix_cube_cell(3, g, 0.1, 4, 6);
  const std::string text = to_json(k).dump();
  const SymKernel back = kernel_from_json(nlohmann::json::parse(text));
  EXPECT_TRUE(back == k);
}

TEST(Serialization, RejectsMalformed) {
  EXPECT_THROW(kernel_from_json(nlohmann::json::parse(R"({"order":1})")), std::invalid_argument);
  EXPECT_THROW(grid_from_json(nlohmann::json::parse(R"({"T":1,"M":0})")), std::invalid_argument);
}
