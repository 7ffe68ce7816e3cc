#include "chaoscalc/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace chaoscalc {

namespace {

void check_cell(const Grid& g, CellIndex j, const char* what) {
  if (j >= g.cells())
    throw std::invalid_argument(std::string(what) + ": cell " + std::to_string(j) + " out of range");
}

std::pair<std::size_t, std::size_t> snapped_interval(const Grid& g, double a, double b, const char* what) {
  const std::size_t first = g.boundary_index(a);
  const std::size_t last = g.boundary_index(b);
  if (first >= last) throw std::invalid_argument(std::string(what) + ": empty interval after snapping");
  return {first, last};
}

// Adds Sym(F (x) 1_j) into an order n+1 builder.
void add_skorohod_slot(const SymKernel& f, CellIndex j, SymKernelBuilder& out) {
  const std::size_t n1 = f.order() + 1;
  const double inv = 1.0 / static_cast<double>(n1);
  const SymKernel* src = &f;
  SymKernel expanded(0, f.grid());
  const bool mixed = std::any_of(f.blocks().begin(), f.blocks().end(), [](const PrefixBlock& b) { return b.has_cell(); });
  if (mixed) {
    expanded = f.materialized();
    src = &expanded;
  } else {
    for (const PrefixBlock& b : f.blocks()) out.add_block(PrefixBlock{b.coef, b.prefix, j});
  }
  for (const auto& [x, c] : src->entries()) {
    Tuple u;
    u.reserve(n1);
    auto pos = std::upper_bound(x.begin(), x.end(), j);
    u.insert(u.end(), x.begin(), pos);
    u.push_back(j);
    u.insert(u.end(), pos, x.end());
    const auto cnt = static_cast<double>(std::count(u.begin(), u.end(), j));
    out.add_entry(std::move(u), cnt * inv * c);
  }
}

}  // namespace

TestFunctionXi::TestFunctionXi(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.cells()) throw std::invalid_argument("test function needs one value per cell");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("test function values must be finite");
}

double TestFunctionXi::l2_norm() const {
  double acc = 0.0;
  for (double v : values_) acc += v * v;
  return std::sqrt(grid_.step() * acc);
}

TestFunctionXi TestFunctionXi::bumped(CellIndex j, double h) const {
  check_cell(grid_, j, "bumped");
  auto v = values_;
  v[j] += h / grid_.step();
  return {grid_, std::move(v)};
}

ChaosVector derivative_at(const ChaosVector& phi, CellIndex j) {
  check_cell(phi.grid(), j, "derivative_at");
  std::vector<SymKernel> out;
  for (std::size_t n = 1; n < phi.size(); ++n)
    out.push_back(phi.components()[n].slice(j).scaled(static_cast<double>(n)));
  return ChaosVector(phi.grid(), std::move(out));
}

ChaosProcess derivative_process(const ChaosVector& phi) {
  return ChaosProcess::generate(phi.grid(), [&](CellIndex j) { return derivative_at(phi, j); });
}

ChaosVector skorohod_cells(const ChaosProcess& psi, std::size_t first, std::size_t last) {
  const Grid& g = psi.grid();
  if (first >= last || last > g.cells()) throw std::invalid_argument("skorohod: empty or out-of-range interval");
  std::size_t top = 0;
  for (std::size_t j = first; j < last; ++j) top = std::max(top, psi.values()[j].size());
  std::vector<SymKernel> out;
  out.emplace_back(0, g);
  for (std::size_t n = 0; n < top; ++n) {
    SymKernelBuilder bld(n + 1, g);
    for (std::size_t j = first; j < last; ++j) {
      const ChaosVector& v = psi.values()[j];
      if (n < v.size() && !v.components()[n].is_zero())
        add_skorohod_slot(v.components()[n], static_cast<CellIndex>(j), bld);
    }
    out.push_back(std::move(bld).build());
  }
  return ChaosVector(g, std::move(out));
}

ChaosVector skorohod(const ChaosProcess& psi, double a, double b) {
  auto [first, last] = snapped_interval(psi.grid(), a, b, "skorohod");
  return skorohod_cells(psi, first, last);
}

ChaosVector pettis_cells(const ChaosProcess& psi, std::size_t first, std::size_t last) {
  const Grid& g = psi.grid();
  if (first >= last || last > g.cells()) throw std::invalid_argument("pettis: empty or out-of-range interval");
  std::size_t top = 0;
  for (std::size_t j = first; j < last; ++j) top = std::max(top, psi.values()[j].size());
  std::vector<SymKernel> out;
  for (std::size_t n = 0; n < top; ++n) {
    SymKernelBuilder bld(n, g);
    for (std::size_t j = first; j < last; ++j) {
      const ChaosVector& v = psi.values()[j];
      if (n < v.size()) bld.add_scaled(g.step(), v.components()[n]);
    }
    out.push_back(std::move(bld).build());
  }
  return ChaosVector(g, std::move(out));
}

ChaosVector pettis_time_integral(const ChaosProcess& psi, double a, double b) {
  auto [first, last] = snapped_interval(psi.grid(), a, b, "pettis_time_integral");
  return pettis_cells(psi, first, last);
}

double kernel_s_transform(const SymKernel& k, const TestFunctionXi& xi) {
  require_same_grid(k.grid(), xi.grid(), "s_transform");
  const double step = k.grid().step();
  const std::size_t n = k.order();
  double sparse = 0.0;
  for (const auto& [t, c] : k.entries()) {
    double prod = c * multiplicity(t);
    for (CellIndex i : t) prod *= xi[i];
    sparse += prod;
  }
  double structured = 0.0;
  if (k.has_blocks()) {
    std::vector<double> prefix_sum(k.grid().cells() + 1, 0.0);
    for (std::size_t i = 0; i < k.grid().cells(); ++i) prefix_sum[i + 1] = prefix_sum[i] + step * xi.values()[i];
    for (const PrefixBlock& b : k.blocks()) {
      const double a = prefix_sum[b.prefix];
      if (b.has_cell())
        structured += b.coef * std::pow(a, static_cast<double>(n - 1)) * step * xi[static_cast<CellIndex>(b.cell)];
      else
        structured += b.coef * std::pow(a, static_cast<double>(n));
    }
  }
  return std::pow(step, static_cast<double>(n)) * sparse + structured;
}

double s_transform(const ChaosVector& phi, const TestFunctionXi& xi) {
  require_same_grid(phi.grid(), xi.grid(), "s_transform");
  double acc = 0.0;
  for (const auto& k : phi.components()) acc += kernel_s_transform(k, xi);
  return acc;
}

double s_transform_frechet(const ChaosVector& phi, const TestFunctionXi& xi, CellIndex j) {
  return s_transform(derivative_at(phi, j), xi);
}

std::set<CellIndex> support(const ChaosVector& v) {
  std::set<CellIndex> s;
  for (const auto& k : v.components()) {
    auto ks = k.support();
    s.insert(ks.begin(), ks.end());
  }
  return s;
}

IndependenceSupportReport strongly_independent(const ChaosVector& a, const ChaosVector& b) {
  require_same_grid(a.grid(), b.grid(), "strongly_independent");
  IndependenceSupportReport r;
  r.support_a = support(a);
  r.support_b = support(b);
  const auto& small = r.support_a.size() <= r.support_b.size() ? r.support_a : r.support_b;
  const auto& large = r.support_a.size() <= r.support_b.size() ? r.support_b : r.support_a;
  r.disjoint = std::none_of(small.begin(), small.end(), [&](CellIndex c) { return large.count(c) > 0; });
  return r;
}

}  // namespace chaoscalc
