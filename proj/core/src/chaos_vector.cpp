#include "chaoscalc/chaos_vector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace chaoscalc {

namespace {
constexpr std::size_t kDirectWeightLimit = 30;
}  // namespace

ChaosVector::ChaosVector(const Grid& grid) : grid_(grid) {}

ChaosVector::ChaosVector(const Grid& grid, std::vector<SymKernel> components)
    : grid_(grid), components_(std::move(components)) {
  for (std::size_t n = 0; n < components_.size(); ++n) {
    if (components_[n].order() != n)
      throw std::invalid_argument("chaos component " + std::to_string(n) + " has order " +
                                  std::to_string(components_[n].order()));
    require_same_grid(grid_, components_[n].grid(), "chaos vector");
  }
  trim();
}

ChaosVector ChaosVector::constant(double c, const Grid& grid) {
  return ChaosVector(grid, {SymKernel::scalar(c, grid)});
}

ChaosVector ChaosVector::single(const SymKernel& k) {
  std::vector<SymKernel> comps;
  comps.reserve(k.order() + 1);
  for (std::size_t n = 0; n < k.order(); ++n) comps.emplace_back(n, k.grid());
  comps.push_back(k);
  return ChaosVector(k.grid(), std::move(comps));
}

void ChaosVector::trim() {
  while (!components_.empty() && components_.back().is_zero()) components_.pop_back();
}

SymKernel ChaosVector::component(std::size_t n) const {
  if (n < components_.size()) return components_[n];
  return SymKernel(n, grid_);
}

double ChaosVector::expectation() const { return components_.empty() ? 0.0 : components_[0].scalar_value(); }

ChaosVector ChaosVector::scaled(double a) const {
  std::vector<SymKernel> out;
  out.reserve(components_.size());
  for (const auto& k : components_) out.push_back(k.scaled(a));
  return ChaosVector(grid_, std::move(out));
}

ChaosVector operator+(const ChaosVector& a, const ChaosVector& b) { return linear_combine(1.0, a, 1.0, b); }
ChaosVector operator-(const ChaosVector& a, const ChaosVector& b) { return linear_combine(1.0, a, -1.0, b); }

bool operator==(const ChaosVector& a, const ChaosVector& b) {
  return a.grid_ == b.grid_ && a.components_ == b.components_;
}

ChaosVector linear_combine(double a, const ChaosVector& x, double b, const ChaosVector& y) {
  require_same_grid(x.grid(), y.grid(), "linear_combine");
  const std::size_t n_max = std::max(x.size(), y.size());
  std::vector<SymKernel> out;
  out.reserve(n_max);
  for (std::size_t n = 0; n < n_max; ++n) {
    SymKernelBuilder bld(n, x.grid());
    if (n < x.size()) bld.add_scaled(a, x.components()[n]);
    if (n < y.size()) bld.add_scaled(b, y.components()[n]);
    out.push_back(std::move(bld).build());
  }
  return ChaosVector(x.grid(), std::move(out));
}

ChaosVector truncate(const ChaosVector& v, std::size_t max_order) {
  if (v.size() <= max_order + 1) return v;
  std::vector<SymKernel> out(v.components().begin(), v.components().begin() + static_cast<std::ptrdiff_t>(max_order + 1));
  return ChaosVector(v.grid(), std::move(out));
}

std::vector<double> component_norms_sq(const ChaosVector& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& k : v.components()) out.push_back(std::max(0.0, k.norm_sq()));
  return out;
}

double gnorm_from_norms(const std::vector<double>& norms_sq, double lambda) {
  double direct = 0.0;
  std::vector<double> logs;
  for (std::size_t n = 0; n < norms_sq.size(); ++n) {
    if (norms_sq[n] == 0.0) continue;
    const double dn = static_cast<double>(n);
    if (n <= kDirectWeightLimit) {
      direct += factorial(n) * std::exp(2.0 * lambda * dn) * norms_sq[n];
    } else {
      logs.push_back(std::lgamma(dn + 1.0) + 2.0 * lambda * dn + std::log(norms_sq[n]));
    }
  }
  if (logs.empty()) return std::sqrt(direct);
  double top = *std::max_element(logs.begin(), logs.end());
  if (direct > 0.0) top = std::max(top, std::log(direct));
  double acc = direct > 0.0 ? std::exp(std::log(direct) - top) : 0.0;
  for (double l : logs) acc += std::exp(l - top);
  return std::exp(0.5 * (top + std::log(acc)));
}

double gnorm(const ChaosVector& v, double lambda) { return gnorm_from_norms(component_norms_sq(v), lambda); }

double pairing(const ChaosVector& a, const ChaosVector& b) {
  require_same_grid(a.grid(), b.grid(), "pairing");
  const std::size_t n_max = std::min(a.size(), b.size());
  double acc = 0.0;
  for (std::size_t n = 0; n < n_max; ++n)
    acc += factorial(n) * inner_product(a.components()[n], b.components()[n]);
  return acc;
}

// ---------------------------------------------------------------------------

ChaosProcess::ChaosProcess(const Grid& grid) : grid_(grid), values_(grid.cells(), ChaosVector(grid)) {}

ChaosProcess::ChaosProcess(const Grid& grid, std::vector<ChaosVector> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.cells()) throw std::invalid_argument("chaos process needs one value per cell");
  for (const auto& v : values_) require_same_grid(grid_, v.grid(), "chaos process");
}

ChaosProcess ChaosProcess::generate(const Grid& grid, const std::function<ChaosVector(CellIndex)>& fn) {
  std::vector<ChaosVector> values;
  values.reserve(grid.cells());
  for (std::size_t j = 0; j < grid.cells(); ++j) values.push_back(fn(static_cast<CellIndex>(j)));
  return ChaosProcess(grid, std::move(values));
}

ChaosProcess ChaosProcess::constant(const ChaosVector& v) {
  return ChaosProcess(v.grid(), std::vector<ChaosVector>(v.grid().cells(), v));
}

const ChaosVector& ChaosProcess::at(CellIndex j) const {
  if (j >= values_.size()) throw std::invalid_argument("process cell " + std::to_string(j) + " out of range");
  return values_[j];
}

std::size_t ChaosProcess::max_order() const noexcept {
  std::size_t m = 0;
  for (const auto& v : values_) m = std::max(m, v.max_order());
  return m;
}

ChaosProcess ChaosProcess::scaled(double a) const {
  std::vector<ChaosVector> out;
  out.reserve(values_.size());
  for (const auto& v : values_) out.push_back(v.scaled(a));
  return ChaosProcess(grid_, std::move(out));
}

ChaosProcess operator+(const ChaosProcess& a, const ChaosProcess& b) {
  require_same_grid(a.grid(), b.grid(), "process sum");
  std::vector<ChaosVector> out;
  out.reserve(a.cells());
  for (std::size_t j = 0; j < a.cells(); ++j) out.push_back(a.values()[j] + b.values()[j]);
  return ChaosProcess(a.grid(), std::move(out));
}

ChaosProcess operator-(const ChaosProcess& a, const ChaosProcess& b) {
  require_same_grid(a.grid(), b.grid(), "process difference");
  std::vector<ChaosVector> out;
  out.reserve(a.cells());
  for (std::size_t j = 0; j < a.cells(); ++j) out.push_back(a.values()[j] - b.values()[j]);
  return ChaosProcess(a.grid(), std::move(out));
}

}  // namespace chaoscalc
