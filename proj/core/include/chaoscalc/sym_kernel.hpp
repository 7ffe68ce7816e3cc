#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "chaoscalc/grid.hpp"

namespace chaoscalc {

/// Cell-index tuple. Stored tuples are always sorted non-decreasing, so a
/// tuple names a multiset of cells and symmetry is structural.
using Tuple = std::vector<CellIndex>;

/// How raw entries handed to SymKernel::from_entries are interpreted.
enum class Ingest {
  /// Entries are already values of the symmetric function; repeated
  /// multisets are summed.
  canonical,
  /// Entries are values of an arbitrary (unsymmetric) function at positional
  /// tuples; the stored kernel is its symmetrization.
  positional,
};

/// Structured term used where sparse storage would explode (Donsker-type
/// kernels constant on [0,a)^n, and their Skorohod integrals).
///
/// With A = 1_{[0, prefix*step)} and e = 1_{cell}:
///   cell <  0 : coef * A^{⊗n}
///   cell >= 0 : coef * Sym(A^{⊗(n-1)} ⊗ e)
/// Blocks only occur at order >= 2; lower orders are expanded into entries.
struct PrefixBlock {
  double coef = 0.0;
  std::uint32_t prefix = 0;
  std::int64_t cell = -1;

  bool has_cell() const noexcept { return cell >= 0; }
  friend bool operator==(const PrefixBlock&, const PrefixBlock&) = default;
};

/// Largest number of sparse entries materialized from block terms before
/// std::length_error is thrown.
inline constexpr std::size_t kMaterializeCap = 4'000'000;

/// Order-n symmetric step-function kernel on a grid, i.e. an element of the
/// symmetric L^2 of [0,T]^n that is constant on products of cells.
///
/// Squared L^2 norm of the sparse part is step^n * sum multiplicity * c^2.
class SymKernel {
 public:
  using EntryMap = std::map<Tuple, double>;

  /// Zero kernel.
  SymKernel(std::size_t order, const Grid& grid);

  static SymKernel scalar(double value, const Grid& grid);
  static SymKernel from_entries(std::size_t order, const Grid& grid,
                                std::span<const std::pair<Tuple, double>> raw, Ingest mode);
  /// Order-1 indicator of cells [first, last).
  static SymKernel indicator(const Grid& grid, std::size_t first, std::size_t last);
  /// Order-1 kernel with one value per cell.
  static SymKernel from_values(const Grid& grid, std::span<const double> per_cell);
  static SymKernel prefix_cube(std::size_t order, const Grid& grid, double coef, std::size_t prefix);
  static SymKernel prefix_cube_cell(std::size_t order, const Grid& grid, double coef,
                                    std::size_t prefix, CellIndex cell);

  std::size_t order() const noexcept { return order_; }
  const Grid& grid() const noexcept { return grid_; }
  const EntryMap& entries() const noexcept { return entries_; }
  const std::vector<PrefixBlock>& blocks() const noexcept { return blocks_; }
  bool has_blocks() const noexcept { return !blocks_.empty(); }
  bool is_zero() const noexcept { return entries_.empty() && blocks_.empty(); }

  /// Value of the symmetric function at a sorted tuple of length order().
  double value_at(std::span<const CellIndex> sorted) const;

  /// Scalar value of an order-0 kernel.
  double scalar_value() const;

  /// Cells touched by any nonzero term.
  std::set<CellIndex> support() const;

  double norm_sq() const;

  /// The same kernel with every block expanded into sparse entries.
  SymKernel materialized(std::size_t max_entries = kMaterializeCap) const;

  /// F(., j) as an order-(n-1) kernel (no factor n). Requires order >= 1.
  SymKernel slice(CellIndex cell) const;

  SymKernel scaled(double a) const;

  friend SymKernel operator+(const SymKernel& a, const SymKernel& b);
  friend SymKernel operator-(const SymKernel& a, const SymKernel& b);
  friend SymKernel operator*(double a, const SymKernel& k) { return k.scaled(a); }

  /// Structural equality of the canonical representation.
  friend bool operator==(const SymKernel& a, const SymKernel& b);

 private:
  friend class SymKernelBuilder;

  std::size_t order_;
  Grid grid_;
  EntryMap entries_;
  std::vector<PrefixBlock> blocks_;
};

/// Mutable accumulator producing canonical SymKernels. Entries must be
/// sorted tuples; blocks of order < 2 are expanded on build().
class SymKernelBuilder {
 public:
  SymKernelBuilder(std::size_t order, const Grid& grid);

  void add_entry(const Tuple& sorted, double coef);
  void add_entry(Tuple&& sorted, double coef);
  void add_block(const PrefixBlock& block);
  void add_scaled(double a, const SymKernel& k);

  std::size_t order() const noexcept { return order_; }
  const Grid& grid() const noexcept { return grid_; }

  SymKernel build() &&;

 private:
  std::size_t order_;
  Grid grid_;
  SymKernel::EntryMap entries_;
  std::vector<PrefixBlock> blocks_;
};

/// (F, G)_{L^2([0,T]^n)}. Throws std::invalid_argument on order or grid mismatch.
double inner_product(const SymKernel& f, const SymKernel& g);

/// n! / prod(repeat counts!) for a sorted tuple.
double multiplicity(std::span<const CellIndex> sorted);

/// n! as a double (exact up to 22!, rounded beyond).
double factorial(std::size_t n);

/// Multiset union of two sorted tuples.
Tuple merge_sorted(std::span<const CellIndex> a, std::span<const CellIndex> b);

/// Calls fn(tuple) for every sorted tuple of length `order` with entries < cells.
template <class Fn>
void for_each_multiset(std::size_t order, std::size_t cells, Fn&& fn) {
  Tuple t(order, 0);
  if (cells == 0 && order > 0) return;
  while (true) {
    fn(static_cast<const Tuple&>(t));
    std::size_t pos = order;
    while (pos > 0 && t[pos - 1] + 1 >= cells) --pos;
    if (pos == 0) return;
    const CellIndex next = t[pos - 1] + 1;
    for (std::size_t i = pos - 1; i < order; ++i) t[i] = next;
  }
}

/// Number of multisets of size `order` drawn from `cells` values, as a double.
double multiset_count(std::size_t order, std::size_t cells);

}  // namespace chaoscalc
