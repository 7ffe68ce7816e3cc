#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "chaoscalc/errors.hpp"
#include "chaoscalc/harness/config.hpp"
#include "chaoscalc/harness/experiments.hpp"

namespace {

using namespace chaoscalc;
using namespace chaoscalc::harness;
using nlohmann::json;

constexpr int kParseError = 2;
constexpr int kGateFailure = 3;
constexpr int kOverflow = 4;

struct Common {
  std::string config_path;
  std::string out_dir;
  unsigned threads = 0;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config_path, "Experiment config (JSON)")->check(CLI::ExistingFile);
  sub->add_option("--out", c.out_dir, "Output directory for CSV and JSON results");
  sub->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--seed", c.seed, "Seed, overrides the config");
}

unsigned resolve_threads(unsigned flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("CHAOSCALC_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw ConfigError(std::string("CHAOSCALC_THREADS must be a positive integer, got '") + env + "'");
  }
  return 1;
}

ExperimentConfig resolve_config(const Common& c, const json& overrides) {
  json j = json::object();
  if (!c.config_path.empty()) {
    std::ifstream in(c.config_path);
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw ConfigError("config '" + c.config_path + "': " + e.what());
    }
  }
  if (!j.is_object()) throw ConfigError("config root must be an object");
  j.merge_patch(overrides);
  if (c.seed) j["seed"] = *c.seed;
  return parse_config(j);
}

void emit(const std::string& command, const ExperimentConfig& cfg, const ExperimentOutput& out,
          const std::string& out_dir) {
  const std::string dir = !out_dir.empty() ? out_dir : cfg.out_dir.value_or("");
  if (dir.empty()) {
    for (std::size_t i = 0; i < out.tables.size(); ++i) {
      if (i > 0) std::cout << '\n';
      write_csv(std::cout, out.tables[i]);
    }
    return;
  }
  std::filesystem::create_directories(dir);
  json result{{"command", command}, {"config", to_json(cfg)}, {"status", out.status}, {"tables", json::array()}};
  for (const auto& t : out.tables) {
    std::ofstream csv(std::filesystem::path(dir) / (t.name + ".csv"));
    if (!csv) throw std::runtime_error("cannot write to '" + dir + "'");
    write_csv(csv, t);
    result["tables"].push_back(table_json(t));
  }
  std::ofstream js(std::filesystem::path(dir) / (command + ".json"));
  js << result.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chaoscalc: white-noise chaos calculus experiments"};
  app.require_subcommand(1);
  Common common;
  json overrides = json::object();

  using Runner = std::function<ExperimentOutput(const ExperimentConfig&, const RunOptions&)>;
  Runner runner;
  std::string command;

  auto* identity = app.add_subcommand("identity-suite", "Discrete identity and property suites");
  add_common(identity, common);
  identity->callback([&] {
    command = "identity-suite";
    runner = run_identity_suite;
  });

  auto* donsker = app.add_subcommand("donsker", "Donsker delta integrand experiment");
  add_common(donsker, common);
  std::optional<double> d_alpha, d_eps, d_t;
  std::optional<std::size_t> d_order, d_cells;
  std::vector<double> d_lambdas;
  donsker->add_option("--alpha", d_alpha, "OU rate");
  donsker->add_option("--eps", d_eps, "Integrand cut-off");
  donsker->add_option("--t", d_t, "Evaluation time");
  donsker->add_option("--order", d_order, "Number of even chaos terms N");
  donsker->add_option("--lambda-sweep", d_lambdas, "Norm indices")->delimiter(',');
  donsker->add_option("--cells", d_cells, "Grid cells");
  donsker->callback([&] {
    command = "donsker";
    runner = run_donsker;
    json b = json::object();
    if (d_alpha) b["alpha"] = *d_alpha;
    if (d_eps) b["eps"] = *d_eps;
    if (d_t) b["t"] = *d_t;
    if (d_order) b["N"] = *d_order;
    if (!d_lambdas.empty()) b["lambdas"] = d_lambdas;
    if (d_cells) b["cells"] = *d_cells;
    if (!b.empty()) overrides["donsker"] = b;
  });

  auto* fbm = app.add_subcommand("fbm-cov", "fBm covariance table from the Volterra kernel");
  add_common(fbm, common);
  fbm->callback([&] {
    command = "fbm-cov";
    runner = run_fbm_cov;
  });

  auto* mc = app.add_subcommand("mc-compare", "Monte Carlo moments against chaos moments");
  add_common(mc, common);
  mc->callback([&] {
    command = "mc-compare";
    runner = run_mc_compare;
  });

  auto* vmbv = app.add_subcommand("vmbv", "Single VMBV integral with diagnostics");
  add_common(vmbv, common);
  vmbv->callback([&] {
    command = "vmbv";
    runner = run_vmbv;
  });

  auto* sweep = app.add_subcommand("sweep", "Cartesian sweep over lambda, t and M");
  add_common(sweep, common);
  sweep->callback([&] {
    command = "sweep";
    runner = run_sweep;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kParseError;
  }

  try {
    const ExperimentConfig cfg = resolve_config(common, overrides);
    const RunOptions opt{resolve_threads(common.threads)};
    const ExperimentOutput out = runner(cfg, opt);
    for (const auto& m : out.messages) std::cerr << command << ": " << m << '\n';
    emit(command, cfg, out, common.out_dir);
    return out.status;
  } catch (const ConfigError& e) {
    std::cerr << command << ": config error: " << e.what() << '\n';
    return kParseError;
  } catch (const IntegrabilityViolation& e) {
    std::cerr << command << ": gate " << e.assumption() << " failed: " << e.what() << '\n';
    return kGateFailure;
  } catch (const IndependenceViolation& e) {
    std::cerr << command << ": gate independence failed at s-cell " << e.cell() << ": " << e.what() << '\n';
    return kGateFailure;
  } catch (const TruncationOverflow& e) {
    std::cerr << command << ": truncation overflow: " << e.what() << '\n';
    return kOverflow;
  } catch (const std::invalid_argument& e) {
    std::cerr << command << ": invalid argument: " << e.what() << '\n';
    return kParseError;
  } catch (const std::exception& e) {
    std::cerr << command << ": " << e.what() << '\n';
    return 1;
  }
}
