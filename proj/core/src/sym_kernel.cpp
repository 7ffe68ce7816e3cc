#include "chaoscalc/sym_kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <tuple>

namespace chaoscalc {

namespace {

const std::array<double, 171>& factorial_table() {
  static const std::array<double, 171> table = [] {
    std::array<double, 171> t{};
    t[0] = 1.0;
    for (std::size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] * static_cast<double>(i);
    return t;
  }();
  return table;
}

std::size_t count_of(std::span<const CellIndex> sorted, CellIndex c) {
  auto [lo, hi] = std::equal_range(sorted.begin(), sorted.end(), c);
  return static_cast<std::size_t>(hi - lo);
}

// Value of one block at a sorted tuple of length n >= 2.
double block_value(const PrefixBlock& b, std::span<const CellIndex> m) {
  const std::size_t n = m.size();
  if (!b.has_cell()) return m.back() < b.prefix ? b.coef : 0.0;
  const auto j = static_cast<CellIndex>(b.cell);
  const std::size_t cnt = count_of(m, j);
  if (cnt == 0) return 0.0;
  // Largest element of m with one copy of j removed.
  CellIndex rest_max;
  if (m.back() != j || cnt >= 2)
    rest_max = m.back();
  else
    rest_max = m[n - 2];
  if (rest_max >= b.prefix) return 0.0;
  return b.coef * static_cast<double>(cnt) / static_cast<double>(n);
}

// Closed-form L^2 inner product of two blocks of the same order n >= 2.
double block_inner(const PrefixBlock& a, const PrefixBlock& b, std::size_t n, double step) {
  const double shared = static_cast<double>(std::min(a.prefix, b.prefix)) * step;
  const double cc = a.coef * b.coef;
  const auto in_prefix = [](std::int64_t cell, std::uint32_t prefix) {
    return cell >= 0 && static_cast<std::uint64_t>(cell) < prefix;
  };
  if (!a.has_cell() && !b.has_cell()) return cc * std::pow(shared, static_cast<double>(n));
  if (a.has_cell() != b.has_cell()) {
    const PrefixBlock& cube = a.has_cell() ? b : a;
    const PrefixBlock& mixed = a.has_cell() ? a : b;
    if (!in_prefix(mixed.cell, cube.prefix)) return 0.0;
    return cc * std::pow(shared, static_cast<double>(n - 1)) * step;
  }
  const double nn = static_cast<double>(n);
  double same = a.cell == b.cell ? std::pow(shared, nn - 1.0) * step : 0.0;
  double cross = 0.0;
  if (in_prefix(b.cell, a.prefix) && in_prefix(a.cell, b.prefix))
    cross = (nn - 1.0) * std::pow(shared, nn - 2.0) * step * step;
  return cc * (same + cross) / nn;
}

void check_tuple(const Tuple& t, std::size_t order, const Grid& grid) {
  if (t.size() != order)
    throw std::invalid_argument("tuple length " + std::to_string(t.size()) + " does not match order " +
                                std::to_string(order));
  for (CellIndex i : t)
    if (i >= grid.cells())
      throw std::invalid_argument("cell index " + std::to_string(i) + " out of range for " +
                                  std::to_string(grid.cells()) + " cells");
}

}  // namespace

double factorial(std::size_t n) {
  const auto& t = factorial_table();
  if (n < t.size()) return t[n];
  return std::numeric_limits<double>::infinity();
}

double multiplicity(std::span<const CellIndex> sorted) {
  double denom = 1.0;
  std::size_t run = 1;
  for (std::size_t i = 1; i <= sorted.size(); ++i) {
    if (i < sorted.size() && sorted[i] == sorted[i - 1]) {
      ++run;
    } else {
      denom *= factorial(run);
      run = 1;
    }
  }
  return factorial(sorted.size()) / denom;
}

double multiset_count(std::size_t order, std::size_t cells) {
  if (cells == 0) return order == 0 ? 1.0 : 0.0;
  return std::exp(std::lgamma(static_cast<double>(cells + order)) - std::lgamma(static_cast<double>(order + 1)) -
                  std::lgamma(static_cast<double>(cells)));
}

Tuple merge_sorted(std::span<const CellIndex> a, std::span<const CellIndex> b) {
  Tuple out(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), out.begin());
  return out;
}

// ---------------------------------------------------------------------------

SymKernelBuilder::SymKernelBuilder(std::size_t order, const Grid& grid) : order_(order), grid_(grid) {}

void SymKernelBuilder::add_entry(const Tuple& sorted, double coef) {
  if (coef == 0.0) return;
  entries_[sorted] += coef;
}

void SymKernelBuilder::add_entry(Tuple&& sorted, double coef) {
  if (coef == 0.0) return;
  entries_[std::move(sorted)] += coef;
}

void SymKernelBuilder::add_block(const PrefixBlock& block) {
  if (block.coef == 0.0) return;
  blocks_.push_back(block);
}

void SymKernelBuilder::add_scaled(double a, const SymKernel& k) {
  if (k.order() != order_) throw std::invalid_argument("builder: order mismatch");
  require_same_grid(grid_, k.grid(), "builder");
  if (a == 0.0) return;
  for (const auto& [t, c] : k.entries()) entries_[t] += a * c;
  for (PrefixBlock b : k.blocks()) {
    b.coef *= a;
    blocks_.push_back(b);
  }
}

SymKernel SymKernelBuilder::build() && {
  SymKernel out(order_, grid_);

  // Blocks below order 2 are plain step functions; expand them.
  std::vector<PrefixBlock> kept;
  for (const PrefixBlock& b : blocks_) {
    if (b.coef == 0.0) continue;
    if (order_ == 0) {
      entries_[Tuple{}] += b.coef;
    } else if (b.has_cell()) {
      if (order_ == 1) {
        entries_[Tuple{static_cast<CellIndex>(b.cell)}] += b.coef;
      } else if (b.prefix > 0) {
        kept.push_back(b);
      }
    } else if (b.prefix > 0) {
      if (order_ == 1) {
        for (CellIndex i = 0; i < b.prefix; ++i) entries_[Tuple{i}] += b.coef;
      } else {
        kept.push_back(b);
      }
    }
  }

  std::sort(kept.begin(), kept.end(), [](const PrefixBlock& x, const PrefixBlock& y) {
    return std::tie(x.prefix, x.cell) < std::tie(y.prefix, y.cell);
  });
  for (const PrefixBlock& b : kept) {
    if (!out.blocks_.empty() && out.blocks_.back().prefix == b.prefix && out.blocks_.back().cell == b.cell)
      out.blocks_.back().coef += b.coef;
    else
      out.blocks_.push_back(b);
  }
  std::erase_if(out.blocks_, [](const PrefixBlock& b) { return b.coef == 0.0; });

  for (auto it = entries_.begin(); it != entries_.end();) {
    if (it->second == 0.0)
      it = entries_.erase(it);
    else
      ++it;
  }
  out.entries_ = std::move(entries_);
  return out;
}

// ---------------------------------------------------------------------------

SymKernel::SymKernel(std::size_t order, const Grid& grid) : order_(order), grid_(grid) {}

SymKernel SymKernel::scalar(double value, const Grid& grid) {
  SymKernelBuilder b(0, grid);
  b.add_entry(Tuple{}, value);
  return std::move(b).build();
}

SymKernel SymKernel::from_entries(std::size_t order, const Grid& grid,
                                  std::span<const std::pair<Tuple, double>> raw, Ingest mode) {
  SymKernelBuilder b(order, grid);
  if (mode == Ingest::canonical) {
    for (const auto& [t, c] : raw) {
      check_tuple(t, order, grid);
      Tuple s = t;
      std::sort(s.begin(), s.end());
      b.add_entry(std::move(s), c);
    }
    return std::move(b).build();
  }
  // Positional input: the symmetrization at a multiset is the average of the
  // function over all orderings, i.e. (sum of supplied orderings) / multiplicity.
  std::map<Tuple, double> sums;
  for (const auto& [t, c] : raw) {
    check_tuple(t, order, grid);
    Tuple s = t;
    std::sort(s.begin(), s.end());
    sums[s] += c;
  }
  for (auto& [s, c] : sums) b.add_entry(s, c / multiplicity(s));
  return std::move(b).build();
}

SymKernel SymKernel::indicator(const Grid& grid, std::size_t first, std::size_t last) {
  if (first > last || last > grid.cells()) throw std::invalid_argument("indicator: bad cell range");
  SymKernelBuilder b(1, grid);
  for (std::size_t i = first; i < last; ++i) b.add_entry(Tuple{static_cast<CellIndex>(i)}, 1.0);
  return std::move(b).build();
}

SymKernel SymKernel::from_values(const Grid& grid, std::span<const double> per_cell) {
  if (per_cell.size() != grid.cells()) throw std::invalid_argument("from_values: need one value per cell");
  SymKernelBuilder b(1, grid);
  for (std::size_t i = 0; i < per_cell.size(); ++i) b.add_entry(Tuple{static_cast<CellIndex>(i)}, per_cell[i]);
  return std::move(b).build();
}

SymKernel SymKernel::prefix_cube(std::size_t order, const Grid& grid, double coef, std::size_t prefix) {
  if (prefix > grid.cells()) throw std::invalid_argument("prefix_cube: prefix beyond grid");
  SymKernelBuilder b(order, grid);
  b.add_block(PrefixBlock{coef, static_cast<std::uint32_t>(prefix), -1});
  return std::move(b).build();
}

SymKernel SymKernel::prefix_cube_cell(std::size_t order, const Grid& grid, double coef, std::size_t prefix,
                                      CellIndex cell) {
  if (order == 0) throw std::invalid_argument("prefix_cube_cell: order must be >= 1");
  if (prefix > grid.cells() || cell >= grid.cells())
    throw std::invalid_argument("prefix_cube_cell: index beyond grid");
  SymKernelBuilder b(order, grid);
  b.add_block(PrefixBlock{coef, static_cast<std::uint32_t>(prefix), static_cast<std::int64_t>(cell)});
  return std::move(b).build();
}

double SymKernel::value_at(std::span<const CellIndex> sorted) const {
  if (sorted.size() != order_) throw std::invalid_argument("value_at: tuple length mismatch");
  double v = 0.0;
  if (!entries_.empty()) {
    auto it = entries_.find(Tuple(sorted.begin(), sorted.end()));
    if (it != entries_.end()) v = it->second;
  }
  for (const PrefixBlock& b : blocks_) v += block_value(b, sorted);
  return v;
}

double SymKernel::scalar_value() const {
  if (order_ != 0) throw std::invalid_argument("scalar_value: kernel order is not 0");
  return entries_.empty() ? 0.0 : entries_.begin()->second;
}

std::set<CellIndex> SymKernel::support() const {
  std::set<CellIndex> s;
  for (const auto& [t, c] : entries_)
    if (c != 0.0) s.insert(t.begin(), t.end());
  for (const PrefixBlock& b : blocks_) {
    if (b.coef == 0.0) continue;
    for (CellIndex i = 0; i < b.prefix; ++i) s.insert(i);
    if (b.has_cell()) s.insert(static_cast<CellIndex>(b.cell));
  }
  return s;
}

double SymKernel::norm_sq() const { return std::max(0.0, inner_product(*this, *this)); }

SymKernel SymKernel::materialized(std::size_t max_entries) const {
  if (blocks_.empty()) return *this;
  std::size_t reach = 0;
  for (const PrefixBlock& b : blocks_)
    reach = std::max<std::size_t>(reach, std::max<std::size_t>(b.prefix, b.has_cell() ? b.cell + 1 : 0));
  if (multiset_count(order_, reach) > static_cast<double>(max_entries))
    throw std::length_error("materialize: order-" + std::to_string(order_) + " kernel on " + std::to_string(reach) +
                            " cells exceeds the entry cap");
  SymKernelBuilder out(order_, grid_);
  for (const auto& [t, c] : entries_) out.add_entry(t, c);
  for_each_multiset(order_, reach, [&](const Tuple& m) {
    double v = 0.0;
    for (const PrefixBlock& b : blocks_) v += block_value(b, m);
    out.add_entry(m, v);
  });
  return std::move(out).build();
}

SymKernel SymKernel::slice(CellIndex cell) const {
  if (order_ == 0) throw std::invalid_argument("slice: order-0 kernel has no slot");
  if (cell >= grid_.cells()) throw std::invalid_argument("slice: cell out of range");
  SymKernelBuilder out(order_ - 1, grid_);
  for (const auto& [t, c] : entries_) {
    auto pos = std::lower_bound(t.begin(), t.end(), cell);
    if (pos == t.end() || *pos != cell) continue;
    Tuple rest;
    rest.reserve(t.size() - 1);
    rest.insert(rest.end(), t.begin(), pos);
    rest.insert(rest.end(), pos + 1, t.end());
    out.add_entry(std::move(rest), c);
  }
  const double n = static_cast<double>(order_);
  for (const PrefixBlock& b : blocks_) {
    const bool inside = cell < b.prefix;
    if (!b.has_cell()) {
      if (inside) out.add_block(PrefixBlock{b.coef, b.prefix, -1});
      continue;
    }
    // Sym(A^{(n-1)} ⊗ e)(y, x) = (1/n)[e(x) A^{(n-1)}(y) + A(x) (n-1) Sym(A^{(n-2)} ⊗ e)(y)]
    if (static_cast<std::int64_t>(cell) == b.cell) out.add_block(PrefixBlock{b.coef / n, b.prefix, -1});
    if (inside) out.add_block(PrefixBlock{b.coef * (n - 1.0) / n, b.prefix, b.cell});
  }
  return std::move(out).build();
}

SymKernel SymKernel::scaled(double a) const {
  SymKernelBuilder b(order_, grid_);
  b.add_scaled(a, *this);
  return std::move(b).build();
}

SymKernel operator+(const SymKernel& a, const SymKernel& b) {
  SymKernelBuilder out(a.order(), a.grid());
  out.add_scaled(1.0, a);
  out.add_scaled(1.0, b);
  return std::move(out).build();
}

SymKernel operator-(const SymKernel& a, const SymKernel& b) {
  SymKernelBuilder out(a.order(), a.grid());
  out.add_scaled(1.0, a);
  out.add_scaled(-1.0, b);
  return std::move(out).build();
}

bool operator==(const SymKernel& a, const SymKernel& b) {
  return a.order_ == b.order_ && a.grid_ == b.grid_ && a.entries_ == b.entries_ && a.blocks_ == b.blocks_;
}

double inner_product(const SymKernel& f, const SymKernel& g) {
  if (f.order() != g.order()) throw std::invalid_argument("inner_product: order mismatch");
  require_same_grid(f.grid(), g.grid(), "inner_product");
  const std::size_t n = f.order();
  const double step = f.grid().step();
  const double scale = std::pow(step, static_cast<double>(n));

  double sparse = 0.0;
  {
    const auto& small = f.entries().size() <= g.entries().size() ? f.entries() : g.entries();
    const auto& large = f.entries().size() <= g.entries().size() ? g.entries() : f.entries();
    for (const auto& [t, c] : small) {
      auto it = large.find(t);
      if (it != large.end()) sparse += multiplicity(t) * c * it->second;
    }
  }
  double mixed = 0.0;
  for (const auto& [t, c] : f.entries())
    for (const PrefixBlock& b : g.blocks()) mixed += multiplicity(t) * c * block_value(b, t);
  for (const auto& [t, c] : g.entries())
    for (const PrefixBlock& b : f.blocks()) mixed += multiplicity(t) * c * block_value(b, t);

  double structured = 0.0;
  for (const PrefixBlock& a : f.blocks())
    for (const PrefixBlock& b : g.blocks()) structured += block_inner(a, b, n, step);

  return scale * (sparse + mixed) + structured;
}

}  // namespace chaoscalc
