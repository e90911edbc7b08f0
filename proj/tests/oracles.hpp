#pragma once

// Test-only brute-force oracles. Everything here is recomputed from raw
// histories and first principles, independent of the library's estimation
// and aggregation paths, so the two can be checked against each other.

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

struct Entry {
  int step;
  int action;
};

using Histories = std::map<std::int64_t, std::vector<Entry>>;

// Decay-weighted fraction of the influencer's strictly-prior history that
// matches the observed action; 0 without prior history.
inline double per_behavior_full(const std::vector<Entry>& influencer, int t, int action,
                                double lambda) {
  double num = 0.0, den = 0.0;
  for (const Entry& e : influencer) {
    if (e.step >= t) continue;
    double d = std::exp(-lambda * static_cast<double>(t - e.step));
    den += d;
    if (e.action == action) num += d;
  }
  return den > 0.0 ? num / den : 0.0;
}

// Window-1 variant: indicator on the influencer's most recent prior action.
inline double per_behavior_recent(const std::vector<Entry>& influencer, int t, int action) {
  const Entry* latest = nullptr;
  for (const Entry& e : influencer)
    if (e.step < t && (latest == nullptr || e.step > latest->step)) latest = &e;
  return latest != nullptr && latest->action == action ? 1.0 : 0.0;
}

inline double pair_prob(const std::vector<Entry>& influencer,
                        const std::vector<Entry>& influencee, double lambda, bool recent) {
  if (influencee.empty()) return 0.0;
  double sum = 0.0;
  for (const Entry& b : influencee)
    sum += recent ? per_behavior_recent(influencer, b.step, b.action)
                  : per_behavior_full(influencer, b.step, b.action, lambda);
  return sum / static_cast<double>(influencee.size());
}

// Full pairwise table and degree vector from scratch.
inline std::map<std::pair<std::int64_t, std::int64_t>, double> pairwise_table(
    const Histories& hist, double lambda, bool recent = false) {
  std::map<std::pair<std::int64_t, std::int64_t>, double> table;
  for (const auto& [vi, hi] : hist)
    for (const auto& [vj, hj] : hist)
      if (vi != vj) table[{vi, vj}] = pair_prob(hi, hj, lambda, recent);
  return table;
}

inline std::map<std::int64_t, double> degrees(const Histories& hist, double lambda,
                                              bool recent = false) {
  auto table = pairwise_table(hist, lambda, recent);
  std::map<std::int64_t, double> deg;
  const double denom = static_cast<double>(hist.size()) - 1.0;
  for (const auto& [vi, hi] : hist) {
    double sum = 0.0;
    for (const auto& [vj, hj] : hist)
      if (vi != vj) sum += table.at({vi, vj});
    deg[vi] = sum / denom;
  }
  return deg;
}

// Counting metrics from raw per-user data.
inline double gaup_count(const std::map<std::int64_t, int>& actions, int target) {
  double hits = 0;
  for (const auto& [id, a] : actions) hits += a == target ? 1.0 : 0.0;
  return hits / static_cast<double>(actions.size());
}

inline double giac_count(const std::map<std::int64_t, int>& actions,
                         const std::map<std::int64_t, double>& offers,
                         const std::map<std::int64_t, std::vector<double>>& prefs, int target) {
  double hits = 0;
  for (const auto& [id, a] : actions) {
    if (a != target) continue;
    const std::vector<double>& p = prefs.at(id);
    double top = p[0];
    for (double x : p) top = std::max(top, x);
    double gap = top - p[static_cast<std::size_t>(target)];
    auto it = offers.find(id);
    double r = it == offers.end() ? 0.0 : it->second;
    if (r < gap) hits += 1.0;
  }
  return hits / static_cast<double>(actions.size());
}

}  // namespace oracle
