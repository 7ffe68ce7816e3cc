#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "chaoscalc/chaos_vector.hpp"
#include "chaoscalc/grid.hpp"
#include "chaoscalc/vmbv_integral.hpp"
#include "chaoscalc/volterra_kernel.hpp"

namespace chaoscalc::harness {

/// Thrown for malformed or inconsistent configuration; maps to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Process builder. Kinds: constant {value}, wiener {f: per-cell values},
/// donsker {N, eps}, brownian {}, random {max_order, density, adapted},
/// custom {process: serialized ChaosProcess}.
struct IntegrandSpec {
  std::string kind = "constant";
  nlohmann::json params = nlohmann::json::object();
};

struct VolatilitySpec {
  Modulation mode = Modulation::none;
  std::optional<IntegrandSpec> process;
};

struct ExperimentConfig {
  double horizon = 1.0;
  std::size_t cells = 16;
  nlohmann::json kernel = {{"kind", "ou"}, {"alpha", 1.0}};
  IntegrandSpec integrand;
  VolatilitySpec volatility;
  double t = 1.0;
  std::vector<double> lambdas{1.0};
  std::optional<std::size_t> truncation;
  std::uint64_t seed = 1;
  std::optional<std::string> out_dir;
  /// Subcommand-specific block ("suite", "donsker", "fbm", "mc", "sweep"), checked by the subcommand.
  nlohmann::json extra = nlohmann::json::object();

  Grid grid() const;
  VolterraKernel volterra() const;
};

/// Parses and validates; unknown fields anywhere are rejected.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
nlohmann::json to_json(const ExperimentConfig& c);

/// Builds a process on the config grid; seed and stream drive "random".
ChaosProcess build_process(const IntegrandSpec& spec, const Grid& grid, std::uint64_t seed, std::uint64_t stream = 0);

/// Rejects keys of `j` outside `allowed`; `where` names the block in the message.
void require_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed, const std::string& where);

}  // namespace chaoscalc::harness
