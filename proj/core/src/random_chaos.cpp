#include "chaoscalc/random_chaos.hpp"

#include <stdexcept>

namespace chaoscalc {

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x5eedu};
  return Rng(seq);
}

SymKernel random_kernel(std::size_t order, const Grid& grid, Rng& rng, double density, CellRange cells) {
  if (cells.last > grid.cells() || cells.first > cells.last) throw std::invalid_argument("random_kernel: bad range");
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> keep(0.0, 1.0);
  SymKernelBuilder b(order, grid);
  const std::size_t width = cells.last - cells.first;
  if (width == 0 && order > 0) return std::move(b).build();
  for_each_multiset(order, width, [&](const Tuple& t) {
    if (order > 0 && keep(rng) >= density) return;
    Tuple shifted = t;
    for (auto& c : shifted) c += static_cast<CellIndex>(cells.first);
    b.add_entry(std::move(shifted), coef(rng));
  });
  return std::move(b).build();
}

SymKernel random_kernel(std::size_t order, const Grid& grid, Rng& rng, double density) {
  return random_kernel(order, grid, rng, density, {0, grid.cells()});
}

ChaosVector random_vector(const Grid& grid, Rng& rng, std::size_t max_order, double density, CellRange cells) {
  std::vector<SymKernel> comps;
  for (std::size_t n = 0; n <= max_order; ++n) comps.push_back(random_kernel(n, grid, rng, density, cells));
  return ChaosVector(grid, std::move(comps));
}

ChaosVector random_vector(const Grid& grid, Rng& rng, std::size_t max_order, double density) {
  return random_vector(grid, rng, max_order, density, {0, grid.cells()});
}

ChaosProcess random_process(const Grid& grid, Rng& rng, std::size_t max_order, double density) {
  return ChaosProcess::generate(grid, [&](CellIndex) { return random_vector(grid, rng, max_order, density); });
}

ChaosProcess random_adapted_process(const Grid& grid, Rng& rng, std::size_t max_order, double density) {
  return ChaosProcess::generate(grid, [&](CellIndex s) {
    return random_vector(grid, rng, s == 0 ? 0 : max_order, density, {0, s});
  });
}

ChaosProcess random_process_on(const Grid& grid, Rng& rng, std::size_t max_order, double density, CellRange active,
                               CellRange support) {
  return ChaosProcess::generate(grid, [&](CellIndex s) {
    if (s < active.first || s >= active.last) return ChaosVector(grid);
    return random_vector(grid, rng, max_order, density, support);
  });
}

}  // namespace chaoscalc
