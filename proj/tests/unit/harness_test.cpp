#include <gtest/gtest.h>

#include <sstream>

#include "chaoscalc/harness/config.hpp"
#include "chaoscalc/harness/csv.hpp"
#include "chaoscalc/harness/experiments.hpp"

using namespace chaoscalc;
using namespace chaoscalc::harness;
using nlohmann::json;

TEST(Csv, FormatsLocaleFree) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(-2.5e-300), "-2.5e-300");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
  std::ostringstream os;
  CsvWriter w(os, {"a", "b", "c", "d"});
  w.row({std::string("x"), 1.5, 3LL, true});
  EXPECT_EQ(os.str(), "a,b,c,d\nx,1.5,3,true\n");
  EXPECT_THROW(w.row({1.0}), std::logic_error);
}

TEST(Config, DefaultsAndRoundTrip) {
  const ExperimentConfig c = parse_config(json::object());
  EXPECT_EQ(c.cells, 16u);
  EXPECT_EQ(c.volatility.mode, Modulation::none);
  const ExperimentConfig back = parse_config(to_json(c));
  EXPECT_EQ(to_json(back), to_json(c));
}

TEST(Config, RejectsUnknownFields) {
  EXPECT_THROW(parse_config(json{{"grids", json::object()}}), ConfigError);
  EXPECT_THROW(parse_config(json{{"grid", {{"T", 1}, {"N", 4}}}}), ConfigError);
  EXPECT_THROW(parse_config(json{{"kernel", {{"kind", "ou"}, {"alpha", 1}, {"beta", 2}}}}), ConfigError);
  EXPECT_THROW(parse_config(json{{"integrand", {{"type", "constant"}, {"val", 1}}}}), ConfigError);
}

TEST(Config, RejectsInvalidValues) {
  EXPECT_THROW(parse_config(json{{"grid", {{"M", 0}}}}), ConfigError);
  EXPECT_THROW(parse_config(json{{"t", 2.0}}), ConfigError);
  EXPECT_THROW(parse_config(json{{"kernel", {{"kind", "ou"}, {"alpha", -1}}}}), ConfigError);
  EXPECT_THROW(parse_config(json{{"volatility", {{"mode", "wick"}}}}), ConfigError);
  EXPECT_THROW(parse_config(json{{"integrand", {{"type", "donsker"}, {"N", 3}, {"eps", 0}}}}), ConfigError);
}

TEST(Config, BuildsEveryIntegrandKind) {
  const Grid g = Grid::make(1.0, 4);
  const std::vector<json> specs{
      {{"type", "constant"}, {"value", 2.0}},
      {{"type", "wiener"}, {"f", {1, 2, 3, 4}}},
      {{"type", "donsker"}, {"N", 2}, {"eps", 0.25}},
      {{"type", "brownian"}},
      {{"type", "random"}, {"max_order", 2}, {"density", 0.5}},
  };
  for (const auto& s : specs) {
    const ExperimentConfig c = parse_config(json{{"grid", {{"T", 1}, {"M", 4}}}, {"integrand", s}});
    EXPECT_EQ(build_process(c.integrand, g, 1).cells(), 4u);
  }
  const ExperimentConfig brown = parse_config(json{{"grid", {{"M", 4}}}, {"integrand", {{"type", "brownian"}}}});
  const ChaosProcess b = build_process(brown.integrand, g, 1);
  EXPECT_TRUE(b.at(0).is_zero());
  EXPECT_EQ(b.at(3).max_order(), 1u);
}

TEST(Experiments, SweepIsDeterministicAcrossThreads) {
  const ExperimentConfig c = parse_config(json{{"grid", {{"M", 8}}},
                                               {"integrand", {{"type", "random"}, {"max_order", 2}}},
                                               {"sweep", {{"lambda", {0.5, 1.0}}, {"t", {0.5, 1.0}}, {"M", {4, 8}}}}});
  const ExperimentOutput a = run_sweep(c, {1}), b = run_sweep(c, {4});
  std::ostringstream sa, sb;
  write_csv(sa, a.tables.front());
  write_csv(sb, b.tables.front());
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_EQ(a.tables.front().rows.size(), 8u);
  EXPECT_EQ(a.status, 0);
}

TEST(Experiments, SweepReportsGateFailures) {
  const ExperimentConfig c = parse_config(json{{"grid", {{"M", 8}}},
                                               {"integrand", {{"type", "brownian"}}},
                                               {"volatility", {{"mode", "strongind"}, {"process", {{"type", "brownian"}}}}}});
  const ExperimentOutput out = run_sweep(c, {2});
  EXPECT_EQ(out.status, 3);
  EXPECT_FALSE(out.messages.empty());
}

TEST(Experiments, VmbvTable) {
  const ExperimentConfig c = parse_config(json{{"lambda", {0.5, 1.0, 2.0}}});
  const ExperimentOutput out = run_vmbv(c, {1});
  ASSERT_EQ(out.tables.size(), 1u);
  EXPECT_EQ(out.tables[0].rows.size(), 3u);
}

TEST(Csv, QuotesSeparators) {
  std::ostringstream os;
  CsvWriter w(os, {"a"});
  w.row({std::string("x,\"y\"")});
  EXPECT_EQ(os.str(), "a\n\"x,\"\"y\"\"\"\n");
}
