#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "chaoscalc/harness/config.hpp"
#include "chaoscalc/harness/csv.hpp"

namespace chaoscalc::harness {

struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<CsvField>> rows;
};

/// status: 0 ok, 1 a check failed, 3 an assumption gate failed.
struct ExperimentOutput {
  std::vector<Table> tables;
  int status = 0;
  std::vector<std::string> messages;
};

struct RunOptions {
  unsigned threads = 1;
};

ExperimentOutput run_identity_suite(const ExperimentConfig& cfg, const RunOptions& opt);
ExperimentOutput run_donsker(const ExperimentConfig& cfg, const RunOptions& opt);
ExperimentOutput run_fbm_cov(const ExperimentConfig& cfg, const RunOptions& opt);
ExperimentOutput run_mc_compare(const ExperimentConfig& cfg, const RunOptions& opt);
ExperimentOutput run_vmbv(const ExperimentConfig& cfg, const RunOptions& opt);
ExperimentOutput run_sweep(const ExperimentConfig& cfg, const RunOptions& opt);

void write_csv(std::ostream& out, const Table& t);
nlohmann::json table_json(const Table& t);

}  // namespace chaoscalc::harness
