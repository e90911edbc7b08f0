#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "incent/allocation.hpp"
#include "incent/types.hpp"

namespace incent {

// Observable trace of one step.
struct StepRecord {
  int step = 0;
  ActionLog actions;
  OfferSet offers;
  double spend = 0.0;
  double gaup = 0.0;
  double giac = 0.0;
  std::size_t population = 0;
};

struct RunSummary {
  std::string strategy;
  double total_budget = 0.0;
  double total_spend = 0.0;
  double mean_gaup = 0.0;
  double mean_giac = 0.0;
  double utilization = 0.0;
  std::optional<double> r_mu;
  std::optional<double> r_tau;
};

// Fraction of the population taking the target action.
inline double gaup(const ActionLog& actions, Action target) {
  if (actions.empty()) throw std::invalid_argument("gaup: empty population");
  std::size_t hits = 0;
  for (const auto& [id, a] : actions)
    if (a == target) ++hits;
  return static_cast<double>(hits) / static_cast<double>(actions.size());
}

// Fraction taking the target despite an offer strictly below their
// preference gap: activations attributable to social influence. Users whose
// favorite already is the target have gap 0 and never count.
inline double giac(const ActionLog& actions, const OfferSet& offers,
                   const std::map<UserId, std::vector<double>>& preferences, Action target) {
  if (actions.empty()) throw std::invalid_argument("giac: empty population");
  std::size_t hits = 0;
  for (const auto& [id, a] : actions) {
    if (a != target) continue;
    auto off = offers.find(id);
    double r = off == offers.end() ? 0.0 : off->second;
    if (r < preference_gap(preferences.at(id), target)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(actions.size());
}

// Return rates against the no-incentive baseline: metric gain per unit of
// budget utilization. Absent when the run spent nothing.
inline std::optional<std::pair<double, double>> return_rates(const RunSummary& summary,
                                                             const RunSummary& baseline) {
  if (summary.utilization <= 0.0) return std::nullopt;
  return std::make_pair((summary.mean_gaup - baseline.mean_gaup) / summary.utilization,
                        (summary.mean_giac - baseline.mean_giac) / summary.utilization);
}

// Per-run aggregation: unweighted means over steps 1..T, spend summed,
// utilization against horizon * per-step budget.
inline RunSummary summarize(const std::vector<StepRecord>& records, std::string strategy,
                            double per_step_budget) {
  if (records.empty()) throw std::invalid_argument("summarize: no records");
  RunSummary s;
  s.strategy = std::move(strategy);
  const auto steps = static_cast<double>(records.size());
  for (const StepRecord& r : records) {
    s.mean_gaup += r.gaup;
    s.mean_giac += r.giac;
    s.total_spend += r.spend;
  }
  s.mean_gaup /= steps;
  s.mean_giac /= steps;
  s.total_budget = per_step_budget * steps;
  s.utilization = s.total_budget > 0.0 ? s.total_spend / s.total_budget : 0.0;
  return s;
}

}  // namespace incent
