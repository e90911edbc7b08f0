#include "incent/metrics.hpp"

#include <gtest/gtest.h>

#include "incent/rng.hpp"
#include "oracles.hpp"

using namespace incent;

TEST(Gaup, Counting) {
  ActionLog actions;
  for (UserId id = 0; id < 10; ++id) actions[id] = id < 3 ? 1 : 0;
  EXPECT_DOUBLE_EQ(gaup(actions, 1), 0.3);
  for (auto& [id, a] : actions) a = 1;
  EXPECT_DOUBLE_EQ(gaup(actions, 1), 1.0);
  for (auto& [id, a] : actions) a = 2;
  EXPECT_DOUBLE_EQ(gaup(actions, 1), 0.0);
  EXPECT_THROW(gaup({}, 1), std::invalid_argument);
}

TEST(Giac, StrictInequalityAtTheGap) {
  std::map<UserId, std::vector<double>> prefs = {{0, {0.2, 0.5, 0.1, 0.1}}};
  ActionLog actions = {{0, 0}};
  OfferSet zero = {{0, 0.0}};
  EXPECT_DOUBLE_EQ(giac(actions, zero, prefs, 0), 1.0);  // 0 < gap 0.3
  OfferSet at_gap = {{0, 0.3}};
  EXPECT_DOUBLE_EQ(giac(actions, at_gap, prefs, 0), 0.0);  // boundary excluded
  OfferSet below = {{0, 0.29999}};
  EXPECT_DOUBLE_EQ(giac(actions, below, prefs, 0), 1.0);
}

TEST(Giac, TargetFavoritesNeverCount) {
  std::map<UserId, std::vector<double>> prefs = {{0, {0.9, 0.5, 0.1, 0.1}}};
  ActionLog actions = {{0, 0}};
  OfferSet zero = {{0, 0.0}};
  EXPECT_DOUBLE_EQ(giac(actions, zero, prefs, 0), 0.0);  // gap 0, r < 0 impossible
}

TEST(Giac, NeverExceedsGaupOnRandomInstances) {
  Rng rng(77);
  for (int it = 0; it < 200; ++it) {
    int n = static_cast<int>(rng.uniform_int(1, 12));
    std::map<UserId, std::vector<double>> prefs;
    ActionLog actions;
    OfferSet offers;
    std::map<std::int64_t, int> o_actions;
    std::map<std::int64_t, double> o_offers;
    for (UserId id = 0; id < n; ++id) {
      std::vector<double> p(4);
      for (double& x : p) x = rng.uniform01();
      prefs[id] = p;
      actions[id] = static_cast<Action>(rng.uniform_int(0, 3));
      offers[id] = rng.uniform01();
      o_actions[id] = actions[id];
      o_offers[id] = offers[id];
    }
    double g = gaup(actions, 0);
    double i = giac(actions, offers, prefs, 0);
    EXPECT_LE(i, g);
    EXPECT_DOUBLE_EQ(g, oracle::gaup_count(o_actions, 0));
    EXPECT_DOUBLE_EQ(i, oracle::giac_count(o_actions, o_offers, prefs, 0));
  }
}

TEST(Giac, NoIncentiveCountsExactlyPositiveGapActivations) {
  // with all offers zero, giac counts the target-takers whose gap is > 0
  Rng rng(78);
  std::map<UserId, std::vector<double>> prefs;
  ActionLog actions;
  OfferSet offers;
  int expected = 0, takers = 0;
  for (UserId id = 0; id < 50; ++id) {
    std::vector<double> p(4);
    for (double& x : p) x = rng.uniform01();
    prefs[id] = p;
    actions[id] = static_cast<Action>(rng.uniform_int(0, 1));  // some take target 0
    offers[id] = 0.0;
    if (actions[id] == 0) {
      ++takers;
      if (preference_gap(p, 0) > 0.0) ++expected;
    }
  }
  EXPECT_DOUBLE_EQ(giac(actions, offers, prefs, 0), expected / 50.0);
  EXPECT_DOUBLE_EQ(gaup(actions, 0), takers / 50.0);
}

TEST(ReturnRates, PublishedFacebookRow) {
  RunSummary s;
  s.mean_gaup = 0.665;
  s.mean_giac = 0.419;
  s.utilization = 0.671;
  RunSummary baseline;
  baseline.mean_gaup = 0.196;
  baseline.mean_giac = 0.109;
  auto rr = return_rates(s, baseline);
  ASSERT_TRUE(rr.has_value());
  EXPECT_NEAR(rr->first, 0.698, 0.002);
  EXPECT_NEAR(rr->second, 0.461, 0.002);
}

TEST(ReturnRates, ZeroNumeratorAndAbsentOnZeroUtilization) {
  RunSummary s;
  s.mean_gaup = 0.3;
  s.mean_giac = 0.2;
  s.utilization = 0.5;
  RunSummary baseline = s;
  auto rr = return_rates(s, baseline);
  ASSERT_TRUE(rr.has_value());
  EXPECT_DOUBLE_EQ(rr->first, 0.0);
  s.utilization = 0.0;
  EXPECT_FALSE(return_rates(s, baseline).has_value());
}

TEST(Summarize, AggregatesAndRoundTripsFromRecords) {
  std::vector<StepRecord> records;
  std::map<UserId, std::vector<double>> prefs = {{0, {0.2, 0.5, 0.1, 0.1}},
                                                 {1, {0.6, 0.1, 0.1, 0.1}}};
  for (int t = 1; t <= 4; ++t) {
    StepRecord r;
    r.step = t;
    r.actions = {{0, 0}, {1, t % 2}};
    r.offers = {{0, 0.1}, {1, 0.0}};
    r.spend = t == 1 ? 0.1 : 0.0;
    r.population = 2;
    r.gaup = gaup(r.actions, 0);
    r.giac = giac(r.actions, r.offers, prefs, 0);
    EXPECT_DOUBLE_EQ(r.gaup, oracle::gaup_count({{0, 0}, {1, t % 2}}, 0));
    records.push_back(r);
  }
  RunSummary s = summarize(records, "x", 2.0);
  EXPECT_DOUBLE_EQ(s.total_budget, 8.0);
  EXPECT_DOUBLE_EQ(s.total_spend, 0.1);
  EXPECT_DOUBLE_EQ(s.utilization, 0.1 / 8.0);
  double mean = 0.0;
  for (const auto& r : records) mean += r.gaup;
  EXPECT_DOUBLE_EQ(s.mean_gaup, mean / 4.0);
  EXPECT_THROW(summarize({}, "x", 1.0), std::invalid_argument);
}
