#pragma once

#include <set>
#include <span>
#include <vector>

#include "chaoscalc/chaos_vector.hpp"

namespace chaoscalc {

/// Step-function stand-in for a test function xi, one value per cell.
class TestFunctionXi {
 public:
  TestFunctionXi(const Grid& grid, std::vector<double> values);
  static TestFunctionXi zero(const Grid& grid) { return {grid, std::vector<double>(grid.cells(), 0.0)}; }

  const Grid& grid() const noexcept { return grid_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double operator[](CellIndex j) const { return values_[j]; }
  double l2_norm() const;

  /// xi + h * e_j / step, the unit-mass bump used for Frechet checks.
  TestFunctionXi bumped(CellIndex j, double h) const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

struct IndependenceSupportReport {
  std::set<CellIndex> support_a;
  std::set<CellIndex> support_b;
  bool disjoint = true;
};

/// D_j Phi: order n-1 component is n * F_n(., j).
ChaosVector derivative_at(const ChaosVector& phi, CellIndex j);
ChaosProcess derivative_process(const ChaosVector& phi);

/// Skorohod integral of psi over [a, b), endpoints snapped down to cell boundaries.
ChaosVector skorohod(const ChaosProcess& psi, double a, double b);
/// Same over whole cells [first, last).
ChaosVector skorohod_cells(const ChaosProcess& psi, std::size_t first, std::size_t last);

/// step * sum_{j in [a,b)} psi(j), left-endpoint cells.
ChaosVector pettis_time_integral(const ChaosProcess& psi, double a, double b);
ChaosVector pettis_cells(const ChaosProcess& psi, std::size_t first, std::size_t last);

/// (F, xi^{(x)n}) for one kernel.
double kernel_s_transform(const SymKernel& k, const TestFunctionXi& xi);
/// sum_n (F_n, xi^{(x)n}).
double s_transform(const ChaosVector& phi, const TestFunctionXi& xi);
/// S(D_j Phi)(xi).
double s_transform_frechet(const ChaosVector& phi, const TestFunctionXi& xi, CellIndex j);

std::set<CellIndex> support(const ChaosVector& v);
IndependenceSupportReport strongly_independent(const ChaosVector& a, const ChaosVector& b);

}  // namespace chaoscalc
