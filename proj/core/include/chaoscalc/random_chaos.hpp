#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "chaoscalc/chaos_vector.hpp"

namespace chaoscalc {

/// Half-open range of cells [first, last).
struct CellRange {
  std::size_t first = 0;
  std::size_t last = 0;
};

using Rng = std::mt19937_64;

Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

/// Kernel of the given order with coefficients uniform in [-1, 1], each
/// multiset over `cells` kept with probability `density`.
SymKernel random_kernel(std::size_t order, const Grid& grid, Rng& rng, double density, CellRange cells);
SymKernel random_kernel(std::size_t order, const Grid& grid, Rng& rng, double density = 1.0);

/// Orders 0..max_order, all on `cells`.
ChaosVector random_vector(const Grid& grid, Rng& rng, std::size_t max_order, double density, CellRange cells);
ChaosVector random_vector(const Grid& grid, Rng& rng, std::size_t max_order, double density = 0.5);

ChaosProcess random_process(const Grid& grid, Rng& rng, std::size_t max_order, double density = 0.5);

/// Phi(s) supported on cells < s (Phi(0) deterministic).
ChaosProcess random_adapted_process(const Grid& grid, Rng& rng, std::size_t max_order, double density = 0.5);

/// Phi(s) = 0 for cells outside `active`, random on `support` inside it.
ChaosProcess random_process_on(const Grid& grid, Rng& rng, std::size_t max_order, double density, CellRange active,
                               CellRange support);

}  // namespace chaoscalc
