#pragma once

#include <cstddef>
#include <optional>

#include "chaoscalc/chaos_vector.hpp"

namespace chaoscalc {

/// Symmetrized tensor product F (x)^ G, order n + m.
SymKernel sym_tensor(const SymKernel& f, const SymKernel& g);

/// Symmetrized k-fold contraction F (x)^_k G, order n + m - 2k.
SymKernel sym_contract(const SymKernel& f, const SymKernel& g, std::size_t k);

/// Wick product; orders above max_order are dropped.
ChaosVector wick(const ChaosVector& a, const ChaosVector& b, std::optional<std::size_t> max_order = std::nullopt);

/// Pointwise product by the full contraction expansion; orders above max_order are dropped.
ChaosVector pointwise(const ChaosVector& a, const ChaosVector& b,
                      std::optional<std::size_t> max_order = std::nullopt);

}  // namespace chaoscalc
