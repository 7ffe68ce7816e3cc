#include "chaoscalc/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "chaoscalc/donsker.hpp"
#include "chaoscalc/random_chaos.hpp"
#include "chaoscalc/serialization.hpp"

namespace chaoscalc::harness {

namespace {

using nlohmann::json;

template <typename T>
T get(const json& j, const char* key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
  return j.contains(key) ? get<T>(j, key, where) : fallback;
}

IntegrandSpec parse_integrand(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  IntegrandSpec s;
  s.kind = get<std::string>(j, "type", where);
  if (s.kind == "constant") {
    require_keys(j, {"type", "value"}, where);
  } else if (s.kind == "wiener") {
    require_keys(j, {"type", "f"}, where);
    get<std::vector<double>>(j, "f", where);
  } else if (s.kind == "donsker") {
    require_keys(j, {"type", "N", "eps"}, where);
    if (!(get<double>(j, "eps", where) > 0.0)) throw ConfigError(where + ".eps must be positive");
    get<std::size_t>(j, "N", where);
  } else if (s.kind == "brownian") {
    require_keys(j, {"type"}, where);
  } else if (s.kind == "random") {
    require_keys(j, {"type", "max_order", "density", "adapted"}, where);
    const double density = get_or<double>(j, "density", 0.5, where);
    if (!(density > 0.0 && density <= 1.0)) throw ConfigError(where + ".density must lie in (0, 1]");
  } else if (s.kind == "custom") {
    require_keys(j, {"type", "process"}, where);
    if (!j.contains("process")) throw ConfigError(where + ": custom integrand needs 'process'");
  } else {
    throw ConfigError(where + ": unknown integrand type '" + s.kind + "'");
  }
  s.params = j;
  return s;
}

}  // namespace

void require_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      throw ConfigError(where + ": unknown field '" + key + "'");
  }
}

Grid ExperimentConfig::grid() const { return Grid::make(horizon, cells); }

VolterraKernel ExperimentConfig::volterra() const {
  try {
    return VolterraKernel::from_json(kernel);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

ExperimentConfig parse_config(const json& j) {
  require_keys(j,
               {"grid", "kernel", "integrand", "volatility", "t", "lambda", "truncation", "seed", "out", "suite",
                "donsker", "fbm", "mc", "sweep"},
               "config");
  ExperimentConfig c;
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    require_keys(g, {"T", "M"}, "grid");
    c.horizon = get_or<double>(g, "T", c.horizon, "grid");
    c.cells = get_or<std::size_t>(g, "M", c.cells, "grid");
    if (!(c.horizon > 0.0) || !std::isfinite(c.horizon)) throw ConfigError("grid.T must be positive");
    if (c.cells == 0) throw ConfigError("grid.M must be positive");
  }
  if (j.contains("kernel")) {
    c.kernel = j.at("kernel");
    require_keys(c.kernel, {"kind", "alpha", "nu", "H", "T", "values", "diagonal_offset"}, "kernel");
  }
  c.volterra();
  if (j.contains("integrand")) c.integrand = parse_integrand(j.at("integrand"), "integrand");
  if (j.contains("volatility")) {
    const json& v = j.at("volatility");
    require_keys(v, {"mode", "process"}, "volatility");
    try {
      c.volatility.mode = modulation_from_string(get<std::string>(v, "mode", "volatility"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("volatility.mode: ") + e.what());
    }
    if (v.contains("process")) c.volatility.process = parse_integrand(v.at("process"), "volatility.process");
    if (c.volatility.mode != Modulation::none && !c.volatility.process)
      throw ConfigError("volatility.process is required for mode " + to_string(c.volatility.mode));
  }
  c.t = get_or<double>(j, "t", c.horizon, "config");
  if (!(c.t > 0.0 && c.t <= c.horizon)) throw ConfigError("t must lie in (0, grid.T]");
  if (j.contains("lambda")) {
    const json& l = j.at("lambda");
    c.lambdas = l.is_array() ? get<std::vector<double>>(j, "lambda", "config") : std::vector<double>{l.get<double>()};
    if (c.lambdas.empty()) throw ConfigError("lambda list is empty");
  }
  if (j.contains("truncation")) c.truncation = get<std::size_t>(j, "truncation", "config");
  c.seed = get_or<std::uint64_t>(j, "seed", c.seed, "config");
  if (j.contains("out")) c.out_dir = get<std::string>(j, "out", "config");
  for (const char* block : {"suite", "donsker", "fbm", "mc", "sweep"}) {
    if (!j.contains(block)) continue;
    if (!j.at(block).is_object()) throw ConfigError(std::string(block) + ": expected an object");
    c.extra[block] = j.at(block);
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  return parse_config(j);
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["grid"] = {{"T", c.horizon}, {"M", c.cells}};
  j["kernel"] = c.kernel;
  j["integrand"] = c.integrand.params.empty() ? json{{"type", c.integrand.kind}} : c.integrand.params;
  json v{{"mode", to_string(c.volatility.mode)}};
  if (c.volatility.process) v["process"] = c.volatility.process->params;
  j["volatility"] = v;
  j["t"] = c.t;
  j["lambda"] = c.lambdas;
  if (c.truncation) j["truncation"] = *c.truncation;
  j["seed"] = c.seed;
  if (c.out_dir) j["out"] = *c.out_dir;
  for (const auto& [key, value] : c.extra.items()) j[key] = value;
  return j;
}

ChaosProcess build_process(const IntegrandSpec& spec, const Grid& grid, std::uint64_t seed, std::uint64_t stream) {
  const json& p = spec.params;
  const std::string where = "integrand";
  if (spec.kind == "constant")
    return ChaosProcess::constant(ChaosVector::constant(get_or<double>(p, "value", 1.0, where), grid));
  if (spec.kind == "wiener") {
    const auto f = get<std::vector<double>>(p, "f", where);
    if (f.size() != grid.cells()) throw ConfigError("integrand.f needs one value per cell");
    return ChaosProcess::constant(ChaosVector::single(SymKernel::from_values(grid, f)));
  }
  if (spec.kind == "donsker")
    return donsker_process(grid, get<std::size_t>(p, "N", where), get<double>(p, "eps", where));
  if (spec.kind == "brownian")
    return ChaosProcess::generate(grid, [&](CellIndex j) {
      return j == 0 ? ChaosVector(grid) : ChaosVector::single(SymKernel::indicator(grid, 0, j));
    });
  if (spec.kind == "random") {
    Rng rng = make_rng(seed, stream);
    const auto order = get_or<std::size_t>(p, "max_order", 2, where);
    const double density = get_or<double>(p, "density", 0.5, where);
    return get_or<bool>(p, "adapted", false, where) ? random_adapted_process(grid, rng, order, density)
                                                     : random_process(grid, rng, order, density);
  }
  if (spec.kind == "custom") {
    try {
      ChaosProcess proc = process_from_json(p.at("process"));
      if (!(proc.grid() == grid)) throw ConfigError("integrand.process grid differs from the config grid");
      return proc;
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("integrand.process: ") + e.what());
    }
  }
  throw ConfigError("unknown integrand type '" + spec.kind + "'");
}

}  // namespace chaoscalc::harness
