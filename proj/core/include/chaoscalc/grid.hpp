#pragma once

#include <cstddef>
#include <cstdint>

namespace chaoscalc {

using CellIndex = std::uint32_t;

/// Uniform discretization of [0, horizon) into `cells` half-open cells.
///
/// Cell i covers [i*step, (i+1)*step). Every operation that takes a time
/// endpoint snaps it down to a cell boundary.
class Grid {
 public:
  /// Throws std::invalid_argument for horizon <= 0 or cells == 0.
  static Grid make(double horizon, std::size_t cells);

  double horizon() const noexcept { return horizon_; }
  std::size_t cells() const noexcept { return cells_; }
  double step() const noexcept { return step_; }

  /// Cell covering time t; total on [0, horizon). Throws outside that range.
  CellIndex cell_of(double t) const;

  /// Number of whole cells in [0, t), with t snapped down to a boundary.
  /// Accepts t in [0, horizon]; values within rounding of a boundary count as on it.
  std::size_t boundary_index(double t) const;

  /// Left edge of cell i (also the grid point with index i, i <= cells).
  double point(std::size_t i) const noexcept { return static_cast<double>(i) * step_; }

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.cells_ == b.cells_ && a.horizon_ == b.horizon_;
  }

 private:
  Grid(double horizon, std::size_t cells) noexcept;

  double horizon_;
  std::size_t cells_;
  double step_;
};

/// Throws std::invalid_argument naming `what` when the grids differ.
void require_same_grid(const Grid& a, const Grid& b, const char* what);

}  // namespace chaoscalc
