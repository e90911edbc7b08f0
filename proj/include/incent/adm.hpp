#pragma once

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "incent/network.hpp"
#include "incent/types.hpp"

namespace incent {

// The simulated user: fixed preferences, an append-only behavior history,
// and the current action (none before step 1).
struct AgentState {
  UserId id = 0;
  std::vector<double> preferences;
  History history;
  Action current = kNoAction;

  void record(int step, Action a) {
    if (!history.empty() && history.back().step >= step)
      throw std::logic_error("AgentState: history steps must increase");
    history.push_back({step, a});
    current = a;
  }
};

using ActionMap = std::unordered_map<UserId, Action>;

// Influence toward action `a`: the weight sum over incoming neighbors whose
// previous-step action was `a`. Users absent from `prev` contribute nothing,
// so step 1 (no prior actions anywhere) yields 0 for every action.
inline double social_influence(const SocialNetwork& g, UserId user, Action a,
                               const ActionMap& prev) {
  double k = 0.0;
  for (const InEdge& e : g.in_edges(user)) {
    auto it = prev.find(e.source);
    if (it != prev.end() && it->second == a) k += e.weight;
  }
  return k;
}

// Influence toward every action in one pass over the in-edges.
inline std::vector<double> social_influence_all(const SocialNetwork& g, UserId user,
                                                int action_count, const ActionMap& prev) {
  std::vector<double> k(static_cast<std::size_t>(action_count), 0.0);
  for (const InEdge& e : g.in_edges(user)) {
    auto it = prev.find(e.source);
    if (it != prev.end() && it->second >= 0 && it->second < action_count)
      k[static_cast<std::size_t>(it->second)] += e.weight;
  }
  return k;
}

// Utility of one action: preference + influence, plus the incentive on the
// target action only. Plain sum, no cap; only the argmax matters.
inline double utility(double preference, double influence, double incentive, Action a,
                      Action target) {
  return preference + influence + (a == target ? incentive : 0.0);
}

// Argmax over utilities. Ties involving the target action resolve to the
// target (an offer matching the gap already flips the user); remaining ties
// resolve to the lowest action index.
inline Action choose_action(const std::vector<double>& utilities, Action target) {
  if (utilities.empty()) throw std::invalid_argument("choose_action: empty utilities");
  std::size_t best = 0;
  for (std::size_t a = 1; a < utilities.size(); ++a)
    if (utilities[a] > utilities[best]) best = a;
  auto t = static_cast<std::size_t>(target);
  if (t < utilities.size() && utilities[t] == utilities[best]) return target;
  return static_cast<Action>(best);
}

// Minimal offer that flips an agent with no incoming neighbors.
inline double min_incentive_isolated(const AgentState& v, Action target) {
  return preference_gap(v.preferences, target);
}

// One full agent decision: utilities from preferences, frozen previous-step
// influence, and the offered incentive.
inline Action decide(const SocialNetwork& g, const AgentState& v, const ActionSet& actions,
                     double incentive, const ActionMap& prev) {
  if (v.preferences.size() != static_cast<std::size_t>(actions.count))
    throw std::invalid_argument("decide: preference vector length != action count");
  std::vector<double> u = social_influence_all(g, v.id, actions.count, prev);
  for (std::size_t a = 0; a < u.size(); ++a)
    u[a] = utility(v.preferences[a], u[a], incentive, static_cast<Action>(a), actions.target);
  return choose_action(u, actions.target);
}

}  // namespace incent
