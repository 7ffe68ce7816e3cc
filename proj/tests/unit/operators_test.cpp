#include <gtest/gtest.h>

#include <cmath>

#include "chaoscalc/operators.hpp"
#include "chaoscalc/random_chaos.hpp"

using namespace chaoscalc;

namespace {
const Grid g8 = Grid::make(1.0, 8);

ChaosVector i1(const std::vector<double>& f, const Grid& g = g8) { return ChaosVector::single(SymKernel::from_values(g, f)); }

double residual(const ChaosVector& a, const ChaosVector& b) { return gnorm(a - b, 0.0); }
}  // namespace

TEST(Derivative, Examples) {
  const std::vector<double> f{1, 2, 3, 4, 5, 6, 7, 8};
  for (CellIndex j = 0; j < 8; ++j) EXPECT_NEAR(residual(derivative_at(i1(f), j), ChaosVector::constant(f[j], g8)), 0, 1e-15);
  EXPECT_TRUE(derivative_at(ChaosVector::constant(2.0, g8), 3).is_zero());
  const ChaosVector dense = ChaosVector::single(SymKernel::prefix_cube(2, g8, 1.0, 8));
  const ChaosVector expect = ChaosVector::single(SymKernel::indicator(g8, 0, 8)).scaled(2.0);
  for (CellIndex j = 0; j < 8; ++j) EXPECT_NEAR(residual(derivative_at(dense, j), expect), 0, 1e-14);
}

TEST(Derivative, ProcessOfFirstChaosIsDeterministic) {
  const std::vector<double> f{1, -2, 3, 0, 5, 6, 7, 8};
  const ChaosProcess p = derivative_process(i1(f));
  for (CellIndex j = 0; j < 8; ++j) EXPECT_NEAR(p.at(j).expectation(), f[j], 1e-15);
  EXPECT_EQ(derivative_process(ChaosVector::constant(1.0, g8)).max_order(), 0u);
}

TEST(Derivative, CorrectedConstantBoundHolds) {
  // step * sum_j ||D_j Phi||^2_{-l-e} <= e^{2l} sup_n n e^{-2e(n-1)} ||Phi||^2_{-l}
  for (std::uint64_t d = 0; d < 200; ++d) {
    Rng rng = make_rng(41, d);
    const double lambda = std::uniform_real_distribution<double>(0.1, 2.0)(rng);
    const double eps = std::uniform_real_distribution<double>(0.05, 1.0)(rng);
    const ChaosVector phi = random_vector(g8, rng, 4, 0.5);
    double lhs = 0.0;
    for (CellIndex j = 0; j < 8; ++j) lhs += g8.step() * std::pow(gnorm(derivative_at(phi, j), -lambda - eps), 2);
    double sup = 0.0;
    for (int n = 1; n < 2000; ++n) sup = std::max(sup, n * std::exp(-2.0 * eps * (n - 1)));
    EXPECT_LE(lhs, std::exp(2.0 * lambda) * sup * std::pow(gnorm(phi, -lambda), 2) * (1 + 1e-12));
  }
}

TEST(Skorohod, ConstantGivesBrownianIncrement) {
  const ChaosProcess one = ChaosProcess::constant(ChaosVector::constant(1.0, g8));
  const ChaosVector d = skorohod(one, 0.25, 0.75);
  EXPECT_NEAR(residual(d, ChaosVector::single(SymKernel::indicator(g8, 2, 6))), 0.0, 1e-15);
  EXPECT_TRUE(skorohod(ChaosProcess(g8), 0.0, 1.0).is_zero());
}

TEST(Skorohod, TwoCellSymmetrization) {
  const Grid g2 = Grid::make(1.0, 2);
  for (CellIndex k = 0; k < 2; ++k) {
    const ChaosProcess p = ChaosProcess::constant(ChaosVector::single(SymKernel::indicator(g2, k, k + 1)));
    const ChaosVector d = skorohod(p, 0.0, 1.0);
    // positional tensor 1_{cell k}(x) 1_[0,1)(y), averaged over both orders
    std::vector<std::pair<Tuple, double>> raw;
    for (CellIndex x = 0; x < 2; ++x)
      for (CellIndex y = 0; y < 2; ++y) raw.push_back({{x, y}, 0.5 * ((x == k ? 1.0 : 0.0) + (y == k ? 1.0 : 0.0))});
    const SymKernel expect = SymKernel::from_entries(2, g2, raw, Ingest::positional);
    EXPECT_NEAR((d.component(2) - expect).norm_sq(), 0.0, 1e-30);
  }
}

TEST(SkorohodAndDerivative, DualityOnFirstChaos) {
  // E[delta(Psi) F] = E[int Psi D F] for F = I_1(f), Psi deterministic
  const std::vector<double> f{1, 0, -1, 2, 0.5, 3, -2, 1};
  const std::vector<double> psi{2, 1, 0, -1, 1, 0, 1, 3};
  const ChaosProcess p =
      ChaosProcess::generate(g8, [&](CellIndex j) { return ChaosVector::constant(psi[j], g8); });
  double rhs = 0.0;
  for (std::size_t j = 0; j < 8; ++j) rhs += g8.step() * psi[j] * f[j];
  EXPECT_NEAR(pairing(skorohod(p, 0.0, 1.0), i1(f)), rhs, 1e-14);
}

TEST(Pettis, Examples) {
  Rng rng = make_rng(2);
  const ChaosVector v = random_vector(g8, rng, 2, 0.5);
  EXPECT_NEAR(residual(pettis_time_integral(ChaosProcess::constant(v), 0.0, 1.0), v), 0.0, 1e-14);
  const ChaosProcess ramp = ChaosProcess::generate(g8, [](CellIndex j) { return ChaosVector::constant(j * 0.125, g8); });
  EXPECT_NEAR(pettis_time_integral(ramp, 0.0, 1.0).expectation(), 0.5 - 0.125 / 2, 1e-15);
}

TEST(STransform, Examples) {
  Rng rng = make_rng(9);
  std::vector<double> xv(8);
  for (auto& x : xv) x = std::normal_distribution<double>()(rng);
  const TestFunctionXi xi(g8, xv);
  EXPECT_DOUBLE_EQ(s_transform(ChaosVector::constant(1.7, g8), xi), 1.7);
  const std::vector<double> f{1, 2, 3, 4, 5, 6, 7, 8};
  double dot = 0.0;
  for (std::size_t j = 0; j < 8; ++j) dot += g8.step() * f[j] * xv[j];
  EXPECT_NEAR(s_transform(i1(f), xi), dot, 1e-13);
  for (CellIndex j = 0; j < 8; ++j) {
    EXPECT_NEAR(s_transform_frechet(i1(f), xi, j), f[j], 1e-13);
    EXPECT_DOUBLE_EQ(s_transform_frechet(ChaosVector::constant(3.0, g8), xi, j), 0.0);
  }
}

TEST(STransform, BlocksMatchMaterialized) {
  Rng rng = make_rng(10);
  std::vector<double> xv(8);
  for (auto& x : xv) x = std::normal_distribution<double>()(rng);
  const TestFunctionXi xi(g8, xv);
  const SymKernel cube = SymKernel::prefix_cube(3, g8, 0.4, 6);
  const SymKernel cc = SymKernel::prefix_cube_cell(3, g8, 0.4, 5, 7);
  for (const SymKernel* k : {&cube, &cc})
    EXPECT_NEAR(kernel_s_transform(*k, xi), kernel_s_transform(k->materialized(), xi), 1e-13);
}

TEST(StrongIndependence, Examples) {
  const ChaosVector a = ChaosVector::single(SymKernel::indicator(g8, 0, 2));
  const ChaosVector b = ChaosVector::single(SymKernel::indicator(g8, 2, 4));
  EXPECT_TRUE(strongly_independent(a, b).disjoint);
  const ChaosVector c = ChaosVector::single(SymKernel::indicator(g8, 1, 3));
  EXPECT_FALSE(strongly_independent(a, c).disjoint);
  std::vector<std::pair<Tuple, double>> raw{{{1}, 0.0}, {{3}, 1.0}};
  const ChaosVector z = ChaosVector::single(SymKernel::from_entries(1, g8, raw, Ingest::canonical));
  const ChaosVector on1 = ChaosVector::single(SymKernel::indicator(g8, 1, 2));
  EXPECT_TRUE(strongly_independent(on1, z).disjoint);
}
