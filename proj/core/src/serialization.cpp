#include "chaoscalc/serialization.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chaoscalc {

using nlohmann::json;

namespace {

template <class Fn>
auto guarded(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string(what) + ": " + e.what());
  }
}

}  // namespace

json to_json(const Grid& g) { return json{{"T", g.horizon()}, {"M", g.cells()}}; }

json to_json(const SymKernel& k) {
  json entries = json::array();
  for (const auto& [t, c] : k.entries()) entries.push_back(json::array({t, c}));
  json out{{"order", k.order()}, {"grid", to_json(k.grid())}, {"entries", std::move(entries)}};
  if (k.has_blocks()) {
    json blocks = json::array();
    for (const auto& b : k.blocks()) blocks.push_back(json::array({b.coef, b.prefix, b.cell}));
    out["blocks"] = std::move(blocks);
  }
  return out;
}

json to_json(const ChaosVector& v) {
  json comps = json::array();
  for (const auto& k : v.components()) comps.push_back(to_json(k));
  return json{{"grid", to_json(v.grid())}, {"components", std::move(comps)}};
}

json to_json(const ChaosProcess& p) {
  json values = json::array();
  for (const auto& v : p.values()) values.push_back(to_json(v));
  return json{{"grid", to_json(p.grid())}, {"values", std::move(values)}};
}

Grid grid_from_json(const json& j) {
  return guarded("grid", [&] { return Grid::make(j.at("T").get<double>(), j.at("M").get<std::size_t>()); });
}

SymKernel kernel_from_json(const json& j) {
  return kernel_from_json(j, guarded("kernel", [&] { return grid_from_json(j.at("grid")); }));
}

SymKernel kernel_from_json(const json& j, const Grid& grid) {
  return guarded("kernel", [&] {
    if (j.contains("grid") && !(grid_from_json(j.at("grid")) == grid))
      throw std::invalid_argument("kernel: grid mismatch");
    const auto order = j.at("order").get<std::size_t>();
    std::vector<std::pair<Tuple, double>> raw;
    for (const auto& e : j.at("entries")) raw.emplace_back(e.at(0).get<Tuple>(), e.at(1).get<double>());
    SymKernel base = SymKernel::from_entries(order, grid, raw, Ingest::canonical);
    if (!j.contains("blocks")) return base;
    SymKernelBuilder b(order, grid);
    b.add_scaled(1.0, base);
    for (const auto& e : j.at("blocks")) {
      PrefixBlock blk{e.at(0).get<double>(), e.at(1).get<std::uint32_t>(), e.at(2).get<std::int64_t>()};
      if (blk.prefix > grid.cells() || blk.cell >= static_cast<std::int64_t>(grid.cells()))
        throw std::invalid_argument("kernel: block index out of range");
      b.add_block(blk);
    }
    return std::move(b).build();
  });
}

ChaosVector vector_from_json(const json& j) {
  return vector_from_json(j, guarded("chaos vector", [&] { return grid_from_json(j.at("grid")); }));
}

ChaosVector vector_from_json(const json& j, const Grid& grid) {
  return guarded("chaos vector", [&] {
    std::vector<SymKernel> comps;
    for (const auto& c : j.at("components")) comps.push_back(kernel_from_json(c, grid));
    return ChaosVector(grid, std::move(comps));
  });
}

ChaosProcess process_from_json(const json& j) {
  return guarded("chaos process", [&] {
    const Grid grid = grid_from_json(j.at("grid"));
    std::vector<ChaosVector> values;
    for (const auto& v : j.at("values")) values.push_back(vector_from_json(v, grid));
    return ChaosProcess(grid, std::move(values));
  });
}

}  // namespace chaoscalc
