#include "incent/config.hpp"

#include <gtest/gtest.h>

#include "incent/report.hpp"

using namespace incent;

TEST(ParseConfig, MinimalConfigFillsDefaults) {
  ExperimentConfig cfg = parse_config(
      "dataset = synthetic:pairs:10:20\n"
      "budget = 5\n"
      "strategy = iud+dgia\n");
  EXPECT_EQ(cfg.action_count, 4);
  EXPECT_EQ(cfg.target, 0);
  EXPECT_DOUBLE_EQ(cfg.lambda, 0.1);
  EXPECT_DOUBLE_EQ(cfg.gamma, 0.9);
  EXPECT_DOUBLE_EQ(cfg.rho0, 0.5);
  EXPECT_DOUBLE_EQ(cfg.theta0, 0.0);
  EXPECT_EQ(cfg.horizon, 150);
  EXPECT_EQ(cfg.seed, 0u);
  EXPECT_FALSE(cfg.churn);
}

TEST(ParseConfig, CommentsAndSpacingTolerated) {
  ExperimentConfig cfg = parse_config(
      "# experiment\n"
      "\n"
      "dataset=synthetic:pairs:10:20\n"
      "  budget =  7.5 \n"
      "strategy = none\n"
      "seed = 42\n");
  EXPECT_DOUBLE_EQ(cfg.budget, 7.5);
  EXPECT_EQ(cfg.seed, 42u);
}

TEST(ParseConfig, UnknownKeyNamed) {
  try {
    parse_config("dataset = x\nbudget = 1\nstrategy = none\nfoo = 3\n");
    FAIL() << "expected error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("foo"), std::string::npos);
  }
}

TEST(ParseConfig, MissingRequiredKeysListedTogether) {
  try {
    parse_config("seed = 1\n");
    FAIL() << "expected error";
  } catch (const std::runtime_error& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("dataset"), std::string::npos);
    EXPECT_NE(msg.find("budget"), std::string::npos);
    EXPECT_NE(msg.find("strategy"), std::string::npos);
  }
}

TEST(ParseConfig, OverridesApplyAfterFile) {
  ExperimentConfig cfg = parse_config(
      "dataset = synthetic:pairs:10:20\nbudget = 5\nstrategy = none\n",
      {"budget=20", "seed=9"});
  EXPECT_DOUBLE_EQ(cfg.budget, 20.0);
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_THROW(parse_config("dataset = x\nbudget = 1\nstrategy = none\n", {"bogus=1"}),
               std::runtime_error);
}

TEST(ParseConfig, BadValuesRejected) {
  EXPECT_THROW(parse_config("dataset = x\nbudget = abc\nstrategy = none\n"), std::runtime_error);
  EXPECT_THROW(parse_config("dataset = x\nbudget = 1\nstrategy = nope\n"), std::invalid_argument);
  EXPECT_THROW(parse_config("dataset = x\nbudget = 1\nstrategy = none\ngamma = 1.5\n"),
               std::invalid_argument);
  EXPECT_THROW(parse_config("dataset = x\nbudget = 1\nstrategy = none\nactions = 1\n"),
               std::invalid_argument);
}

namespace {

RunSummary mk(const std::string& name, double spend, double mu, double tau, double util) {
  RunSummary s;
  s.strategy = name;
  s.total_budget = 3000.0;
  s.total_spend = spend;
  s.mean_gaup = mu;
  s.mean_giac = tau;
  s.utilization = util;
  return s;
}

}  // namespace

TEST(Report, SixRowsWithBaselineSlashes) {
  std::vector<RunSummary> rows = {
      mk("iud+dgia", 1184.26, 0.691, 0.398, 0.395), mk("ipe+dgia", 1099.433, 0.596, 0.327, 0.366),
      mk("dgia", 843.381, 0.572, 0.316, 0.281),     mk("uniform", 830.932, 0.275, 0.099, 0.277),
      mk("dbp-ucb", 1111.75, 0.312, 0.1, 0.371),    mk("none", 0.0, 0.172, 0.067, 0.0)};
  Report report = make_report(rows, true);
  // baseline row renders "/" in spend/utilization/returns
  EXPECT_NE(report.text.find("none"), std::string::npos);
  auto parsed = summaries_from_csv(report.csv);
  ASSERT_EQ(parsed.size(), 6u);
  // return rates were computed against the baseline
  ASSERT_TRUE(parsed[0].r_mu.has_value());
  EXPECT_NEAR(*parsed[0].r_mu, (0.691 - 0.172) / 0.395, 1e-12);
  EXPECT_FALSE(parsed[5].r_mu.has_value());
  // per-column best marks exist in the text
  EXPECT_NE(report.text.find("0.691*"), std::string::npos);  // best mean_gaup
  EXPECT_NE(report.text.find("830.932*"), std::string::npos);  // lowest spend
}

TEST(Report, TextAndCsvCarryIdenticalNumbers) {
  std::vector<RunSummary> rows = {mk("uniform", 10.5, 0.25, 0.125, 0.3125),
                                  mk("none", 0.0, 0.125, 0.0625, 0.0)};
  Report report = make_report(rows, true);
  for (const std::string& token : {"10.5", "0.25", "0.125", "0.3125", "0.0625"}) {
    EXPECT_NE(report.text.find(token), std::string::npos) << token;
    EXPECT_NE(report.csv.find(token), std::string::npos) << token;
  }
}

TEST(Report, ReturnsRequestedWithoutBaselineErrors) {
  std::vector<RunSummary> rows = {mk("uniform", 10.0, 0.3, 0.1, 0.5)};
  EXPECT_THROW(make_report(rows, true), std::runtime_error);
  Report report = make_report(rows, false);  // fine without returns
  EXPECT_FALSE(report.rows[0].r_mu.has_value());
  EXPECT_THROW(make_report({}, false), std::invalid_argument);
}
