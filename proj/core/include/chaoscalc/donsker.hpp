#pragma once

#include <cstddef>
#include <vector>

#include "chaoscalc/chaos_vector.hpp"

namespace chaoscalc {

/// Truncated chaos expansion of delta_0(B(t)): orders 0, 2, .., 2N with the
/// order-2n kernel (-1)^n / (sqrt(2 pi t) (2t)^n n!) on [0,t)^{2n}.
/// t must be a positive cell boundary.
ChaosVector donsker_delta(double t, std::size_t n_terms, const Grid& grid);

/// (1/(2 pi t)) sum_{n<=N} (2n)! / (4^n (n!)^2 e^{4 lambda n}); lambda > 0.
double donsker_norm_series(double t, double lambda, std::size_t n_terms);

/// The N -> infinity limit 1/(2 pi t sqrt(1 - e^{-4 lambda})).
double donsker_norm_limit(double t, double lambda);

/// Phi(k) = delta_0(B(k*step)) for cells with k*step >= eps, zero below.
ChaosProcess donsker_process(const Grid& grid, std::size_t n_terms, double eps);

struct DonskerConfig {
  double alpha = 1.0;
  double eps = 0.25;
  double t = 1.0;
  std::size_t n_terms = 20;
  double lambda = 1.0;
  std::vector<double> lambda_sweep{0.5, 1.0, 2.0};
  std::size_t cells = 64;
  double horizon = 1.0;
};

struct DonskerCellRow {
  std::size_t cell = 0;
  double s = 0.0;
  double a3 = 0.0;
  /// 4 C_lambda (1/s)(1 - e^{-alpha (t - s)}) with C_lambda/s the truncated series at s.
  double bound = 0.0;
};

struct DonskerLambdaRow {
  double lambda = 0.0;
  double norm_sq = 0.0;
  bool finite = false;
};

struct DonskerReport {
  DonskerConfig config;
  std::vector<DonskerCellRow> cells;
  double a3_max = 0.0;
  double bound_max = 0.0;
  bool dominated = true;
  /// The increment variation at the first active cell exceeds the next one (the 1/s blow-up as eps -> 0).
  bool diverging_near_zero = false;
  std::vector<DonskerLambdaRow> norms;
  /// Value of K_g(Phi)(t,s)^{(2n)} at (0,..,0) for the first active s-cell, n = 0..3.
  std::vector<double> kg_even_coefficients;
  /// Signs of kg_even_coefficients alternate as (-1)^n.
  bool kg_sign_pattern = false;
};

DonskerReport donsker_vmbv_experiment(const DonskerConfig& cfg);

}  // namespace chaoscalc
