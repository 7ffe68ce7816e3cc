#include "chaoscalc/products.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace chaoscalc {

namespace {

using Split = std::pair<Tuple, double>;
using SplitIndex = std::map<Tuple, std::vector<Split>>;

// Every distinct way of taking a size-k sub-multiset z out of t; fn(z, rest).
template <class Fn>
void for_each_submultiset(const Tuple& t, std::size_t k, Fn&& fn) {
  std::vector<CellIndex> values;
  std::vector<std::size_t> counts;
  for (CellIndex c : t) {
    if (values.empty() || values.back() != c) {
      values.push_back(c);
      counts.push_back(1);
    } else {
      ++counts.back();
    }
  }
  std::vector<std::size_t> take(values.size(), 0);
  auto rec = [&](auto&& self, std::size_t idx, std::size_t left) -> void {
    if (idx == values.size()) {
      if (left != 0) return;
      Tuple z, rest;
      z.reserve(k);
      rest.reserve(t.size() - k);
      for (std::size_t i = 0; i < values.size(); ++i) {
        z.insert(z.end(), take[i], values[i]);
        rest.insert(rest.end(), counts[i] - take[i], values[i]);
      }
      fn(std::move(z), std::move(rest));
      return;
    }
    const std::size_t hi = std::min(counts[idx], left);
    for (std::size_t c = 0; c <= hi; ++c) {
      take[idx] = c;
      self(self, idx + 1, left - c);
    }
    take[idx] = 0;
  };
  rec(rec, 0, k);
}

SplitIndex index_by_contracted(const SymKernel& f, std::size_t k) {
  SplitIndex idx;
  for (const auto& [t, c] : f.entries())
    for_each_submultiset(t, k, [&](Tuple z, Tuple rest) { idx[std::move(z)].emplace_back(std::move(rest), c); });
  return idx;
}

const SymKernel& sparse_view(const SymKernel& k, SymKernel& storage) {
  if (!k.has_blocks()) return k;
  storage = k.materialized();
  return storage;
}

double binomial(std::size_t n, std::size_t k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

}  // namespace

SymKernel sym_contract(const SymKernel& f_in, const SymKernel& g_in, std::size_t k) {
  require_same_grid(f_in.grid(), g_in.grid(), "sym_contract");
  if (k > f_in.order() || k > g_in.order()) throw std::invalid_argument("sym_contract: k exceeds an order");
  const Grid& grid = f_in.grid();
  SymKernel fs(0, grid), gs(0, grid);
  const SymKernel& f = sparse_view(f_in, fs);
  const SymKernel& g = sparse_view(g_in, gs);

  const std::size_t out_order = f.order() + g.order() - 2 * k;
  SymKernelBuilder out(out_order, grid);
  if (f.is_zero() || g.is_zero()) return std::move(out).build();

  const double wk = std::pow(grid.step(), static_cast<double>(k));
  const SplitIndex fi = index_by_contracted(f, k);
  const SplitIndex gi = index_by_contracted(g, k);
  for (const auto& [z, fl] : fi) {
    auto it = gi.find(z);
    if (it == gi.end()) continue;
    const double zw = wk * multiplicity(z);
    for (const auto& [x, cf] : fl) {
      const double mx = multiplicity(x);
      for (const auto& [y, cg] : it->second) {
        Tuple u = merge_sorted(x, y);
        const double w = zw * mx * multiplicity(y) / multiplicity(u);
        out.add_entry(std::move(u), w * cf * cg);
      }
    }
  }
  return std::move(out).build();
}

SymKernel sym_tensor(const SymKernel& f, const SymKernel& g) { return sym_contract(f, g, 0); }

ChaosVector wick(const ChaosVector& a, const ChaosVector& b, std::optional<std::size_t> max_order) {
  require_same_grid(a.grid(), b.grid(), "wick");
  const Grid& grid = a.grid();
  if (a.is_zero() || b.is_zero()) return ChaosVector(grid);
  std::size_t top = a.max_order() + b.max_order();
  if (max_order) top = std::min(top, *max_order);
  std::vector<SymKernelBuilder> acc;
  for (std::size_t n = 0; n <= top; ++n) acc.emplace_back(n, grid);
  for (std::size_t n = 0; n < a.size(); ++n) {
    if (a.components()[n].is_zero()) continue;
    for (std::size_t m = 0; m < b.size() && n + m <= top; ++m) {
      if (b.components()[m].is_zero()) continue;
      acc[n + m].add_scaled(1.0, sym_tensor(a.components()[n], b.components()[m]));
    }
  }
  std::vector<SymKernel> out;
  for (auto& bld : acc) out.push_back(std::move(bld).build());
  return ChaosVector(grid, std::move(out));
}

ChaosVector pointwise(const ChaosVector& a, const ChaosVector& b, std::optional<std::size_t> max_order) {
  require_same_grid(a.grid(), b.grid(), "pointwise");
  const Grid& grid = a.grid();
  if (a.is_zero() || b.is_zero()) return ChaosVector(grid);
  std::size_t top = a.max_order() + b.max_order();
  if (max_order) top = std::min(top, *max_order);
  std::vector<SymKernelBuilder> acc;
  for (std::size_t n = 0; n <= top; ++n) acc.emplace_back(n, grid);
  for (std::size_t n = 0; n < a.size(); ++n) {
    const SymKernel& f = a.components()[n];
    if (f.is_zero()) continue;
    for (std::size_t m = 0; m < b.size(); ++m) {
      const SymKernel& g = b.components()[m];
      if (g.is_zero()) continue;
      for (std::size_t k = 0; k <= std::min(n, m); ++k) {
        const std::size_t order = n + m - 2 * k;
        if (order > top) continue;
        const double w = factorial(k) * binomial(n, k) * binomial(m, k);
        acc[order].add_scaled(w, sym_contract(f, g, k));
      }
    }
  }
  std::vector<SymKernel> out;
  for (auto& bld : acc) out.push_back(std::move(bld).build());
  return ChaosVector(grid, std::move(out));
}

}  // namespace chaoscalc
