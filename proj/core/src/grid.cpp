#include "chaoscalc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace chaoscalc {

namespace {
// Relative slack used when deciding whether a time sits on a cell boundary.
constexpr double kBoundarySlack = 1e-9;
}  // namespace

Grid::Grid(double horizon, std::size_t cells) noexcept
    : horizon_(horizon), cells_(cells), step_(horizon / static_cast<double>(cells)) {}

Grid Grid::make(double horizon, std::size_t cells) {
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw std::invalid_argument("grid horizon must be positive and finite");
  if (cells == 0) throw std::invalid_argument("grid needs at least one cell");
  return Grid(horizon, cells);
}

CellIndex Grid::cell_of(double t) const {
  if (!(t >= 0.0) || !(t < horizon_))
    throw std::invalid_argument("time " + std::to_string(t) + " outside [0, horizon)");
  auto i = static_cast<std::size_t>(std::floor(t / step_));
  if (i >= cells_) i = cells_ - 1;
  return static_cast<CellIndex>(i);
}

std::size_t Grid::boundary_index(double t) const {
  if (!(t >= 0.0) || t > horizon_ * (1.0 + kBoundarySlack))
    throw std::invalid_argument("time " + std::to_string(t) + " outside [0, horizon]");
  const double x = t / step_;
  const double r = std::round(x);
  const double snapped = std::abs(x - r) <= kBoundarySlack * std::max(1.0, r) ? r : std::floor(x);
  const auto i = static_cast<std::size_t>(snapped);
  return i > cells_ ? cells_ : i;
}

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

}  // namespace chaoscalc
