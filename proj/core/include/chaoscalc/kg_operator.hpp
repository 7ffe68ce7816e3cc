#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "chaoscalc/chaos_vector.hpp"
#include "chaoscalc/volterra_kernel.hpp"

namespace chaoscalc {

/// Precomputed kernel data for K_g at one time t. The s-cell i is sampled at
/// s_i = (i + diagonal_offset) * step.
struct KgPlan {
  explicit KgPlan(const Grid& g) : grid(g) {}

  Grid grid;
  double t = 0.0;
  /// Number of s-cells below t.
  std::size_t cells = 0;
  std::vector<double> sample_point;
  /// g(t, s_i).
  std::vector<double> g_t;
  /// g(u_{i+1}, s_i), the value at the right edge of cell i.
  std::vector<double> g_edge;
  /// weights[i][k - i - 1] = g(u_{k+1}, s_i) - g(u_k, s_i) for i < k < cells.
  std::vector<std::vector<double>> weights;
  /// Total variation of g(., s_i) on [u_{i+1}, t].
  std::vector<double> total_variation;
  bool clipped = false;
};

KgPlan make_kg_plan(const VolterraKernel& k, const Grid& grid, double t);

/// K_g(Phi)(t, s_i) = g(u_{i+1}, s_i) Phi(i) + sum_k weights Phi(k),
/// i.e. g(t, s_i) Phi(i) + sum_k weights (Phi(k) - Phi(i)).
ChaosVector kg_value(const KgPlan& plan, const ChaosProcess& phi, std::size_t i);

/// Values for s-cells below t; zero for the remaining cells.
ChaosProcess kg_apply(const ChaosProcess& phi, const KgPlan& plan);
ChaosProcess kg_apply(const ChaosProcess& phi, const VolterraKernel& k, double t);

/// Discrete integrability quantities for K_g(Phi) and their aggregate.
struct AssumptionReport {
  double lambda = 0.0;
  double t = 0.0;
  /// int ||Phi(u) - Phi(s)||^2 |g|(du, s) per s-cell.
  std::vector<double> a3;
  std::vector<double> total_variation;
  /// int |g(t,s)|^2 ||Phi(s)||^2 ds.
  double b4 = 0.0;
  /// int || int (Phi(u) - Phi(s)) g(du, s) ||^2 ds.
  double b5 = 0.0;
  /// int ||K_g(Phi)(t, s)||^2 ds.
  double aggregate = 0.0;
  bool clipped = false;

  bool finite() const;
  /// Name of the first non-finite item.
  std::optional<std::string> first_failure() const;
};

AssumptionReport assumption_report(const ChaosProcess& phi, const VolterraKernel& k, double lambda, double t);
AssumptionReport assumption_report(const ChaosProcess& phi, const KgPlan& plan, double lambda);

}  // namespace chaoscalc
