#pragma once

#include <nlohmann/json.hpp>

#include "chaoscalc/chaos_vector.hpp"
#include "chaoscalc/grid.hpp"
#include "chaoscalc/sym_kernel.hpp"

namespace chaoscalc {

// Layout: grid {"T":.., "M":..}; kernel {"order", "grid", "entries": [[[i..], c], ..]}
// plus "blocks": [[coef, prefix, cell], ..] when structured terms exist;
// vector {"grid", "components": [kernel, ..]}. Doubles round-trip bit-exactly.

nlohmann::json to_json(const Grid& g);
nlohmann::json to_json(const SymKernel& k);
nlohmann::json to_json(const ChaosVector& v);
nlohmann::json to_json(const ChaosProcess& p);

/// All parsers throw std::invalid_argument on malformed input.
Grid grid_from_json(const nlohmann::json& j);
SymKernel kernel_from_json(const nlohmann::json& j);
SymKernel kernel_from_json(const nlohmann::json& j, const Grid& grid);
ChaosVector vector_from_json(const nlohmann::json& j);
ChaosVector vector_from_json(const nlohmann::json& j, const Grid& grid);
ChaosProcess process_from_json(const nlohmann::json& j);

}  // namespace chaoscalc
