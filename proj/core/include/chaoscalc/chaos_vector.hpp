#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "chaoscalc/grid.hpp"
#include "chaoscalc/sym_kernel.hpp"

namespace chaoscalc {

/// Finite chaos expansion sum_{n<=N} I_n(F_n). Trailing zero orders are
/// dropped, so the stored component list is as short as possible.
class ChaosVector {
 public:
  /// The zero vector.
  explicit ChaosVector(const Grid& grid);
  /// Component n must have order n; missing orders may be zero kernels.
  ChaosVector(const Grid& grid, std::vector<SymKernel> components);

  static ChaosVector constant(double c, const Grid& grid);
  /// I_n(k) with n = k.order().
  static ChaosVector single(const SymKernel& k);

  const Grid& grid() const noexcept { return grid_; }
  const std::vector<SymKernel>& components() const noexcept { return components_; }
  /// Number of stored orders (max order + 1, or 0 for the zero vector).
  std::size_t size() const noexcept { return components_.size(); }
  std::size_t max_order() const noexcept { return components_.empty() ? 0 : components_.size() - 1; }
  bool is_zero() const noexcept { return components_.empty(); }

  /// Component of order n (zero kernel when absent).
  SymKernel component(std::size_t n) const;
  bool has_component(std::size_t n) const noexcept {
    return n < components_.size() && !components_[n].is_zero();
  }

  /// The order-0 coefficient, i.e. the expectation.
  double expectation() const;

  ChaosVector scaled(double a) const;

  friend ChaosVector operator+(const ChaosVector& a, const ChaosVector& b);
  friend ChaosVector operator-(const ChaosVector& a, const ChaosVector& b);
  friend ChaosVector operator*(double a, const ChaosVector& v) { return v.scaled(a); }
  friend bool operator==(const ChaosVector& a, const ChaosVector& b);

 private:
  void trim();

  Grid grid_;
  std::vector<SymKernel> components_;
};

/// One ChaosVector per grid cell.
class ChaosProcess {
 public:
  /// The zero process.
  explicit ChaosProcess(const Grid& grid);
  ChaosProcess(const Grid& grid, std::vector<ChaosVector> values);

  static ChaosProcess generate(const Grid& grid, const std::function<ChaosVector(CellIndex)>& fn);
  static ChaosProcess constant(const ChaosVector& v);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t cells() const noexcept { return values_.size(); }
  const ChaosVector& at(CellIndex j) const;
  const std::vector<ChaosVector>& values() const noexcept { return values_; }
  std::size_t max_order() const noexcept;

  ChaosProcess scaled(double a) const;
  friend ChaosProcess operator+(const ChaosProcess& a, const ChaosProcess& b);
  friend ChaosProcess operator-(const ChaosProcess& a, const ChaosProcess& b);
  friend bool operator==(const ChaosProcess& a, const ChaosProcess& b) = default;

 private:
  Grid grid_;
  std::vector<ChaosVector> values_;
};

/// |F_n|^2 for n = 0..max_order.
std::vector<double> component_norms_sq(const ChaosVector& v);

/// sqrt(sum n! e^{2 lambda n} |F_n|^2), log-space beyond n = 30.
double gnorm(const ChaosVector& v, double lambda);
/// Same, from precomputed component_norms_sq.
double gnorm_from_norms(const std::vector<double>& norms_sq, double lambda);

/// sum n! (F_n, G_n).
double pairing(const ChaosVector& a, const ChaosVector& b);

ChaosVector truncate(const ChaosVector& v, std::size_t max_order);

ChaosVector linear_combine(double a, const ChaosVector& x, double b, const ChaosVector& y);

}  // namespace chaoscalc
