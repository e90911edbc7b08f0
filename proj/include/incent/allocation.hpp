#pragma once

// System-side allocators. This header deliberately has no view of the
// network module: strategies see user ids, preferences, budget, and the
// influence estimates only, never the hidden topology.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "incent/types.hpp"

namespace incent {

using OfferSet = std::map<UserId, double>;
using ActionLog = std::map<UserId, Action>;

// Share of the target action in a user's total preference mass, the prior
// that the user picks the target unprompted.
inline double preference_ratio(const std::vector<double>& preferences, Action target) {
  double sum = 0.0;
  for (double p : preferences) sum += p;
  if (sum <= 0.0) throw std::invalid_argument("preference_ratio: all-zero preference vector");
  return preferences[static_cast<std::size_t>(target)] / sum;
}

// Bayes-style sensitivity update: acceptance sharpens rho toward 1 against
// the unprompted-choice prior omega; refusal decays it by gamma. rho = 0 is
// absorbing.
inline double update_sensitivity(double rho_prev, double omega, bool took_target, double gamma) {
  if (!took_target) return gamma * rho_prev;
  double den = rho_prev + omega * (1.0 - rho_prev);
  if (den <= 0.0) return 0.0;
  return rho_prev / den;
}

// Offer value: (1 - rho) * (gap^mu + theta^mu). Low sensitivity, a wide
// preference gap, and strong influence all raise the offer; a high activated
// share mu shrinks it. 0^0 is taken as 1, so the first step (mu = 0) offers
// generously to everyone.
inline double dgia_incentive(double rho_prev, double theta, double gaup_prev, double pref_gap) {
  return (1.0 - rho_prev) * (std::pow(pref_gap, gaup_prev) + std::pow(theta, gaup_prev));
}

// ---------------------------------------------------------------------------
// Strategy interface
// ---------------------------------------------------------------------------

// The engine-provided channel for one step: present an offer, observe the
// user's action. Each live user must be offered exactly once per step.
class AgentGate {
 public:
  virtual ~AgentGate() = default;
  virtual Action offer_and_observe(UserId id, double offer) = 0;
};

// Everything an allocator may consult. `degrees` is null when no estimator
// runs; theta falls back to `default_theta` then.
struct AllocatorView {
  int step = 1;
  double budget = 0.0;
  ActionSet actions;
  const std::vector<UserId>* users = nullptr;  // ascending
  const std::map<UserId, std::vector<double>>* preferences = nullptr;
  const std::map<UserId, double>* degrees = nullptr;
  double default_theta = 0.0;

  const std::vector<double>& prefs(UserId id) const { return preferences->at(id); }

  double theta(UserId id) const {
    if (degrees == nullptr) return default_theta;
    auto it = degrees->find(id);
    return it == degrees->end() ? default_theta : it->second;
  }
};

struct StepResult {
  OfferSet offers;
  ActionLog actions;
  double spend = 0.0;
};

class Allocator {
 public:
  virtual ~Allocator() = default;
  virtual StepResult step(const AllocatorView& view, AgentGate& gate) = 0;
  virtual void add_user(UserId id, const std::vector<double>& preferences) = 0;
  virtual void remove_user(UserId id) = 0;
  virtual std::string name() const = 0;
};

// Per-user estimates and ordering the system accumulates, plus the bandit
// baseline's arm statistics.
struct AllocatorState {
  std::map<UserId, double> rho;    // incentive sensitivity, 0.5 on creation
  std::map<UserId, double> omega;  // cached preference ratios
  std::vector<UserId> priority;    // permutation of current users
  double gamma = 0.9;
  double gaup_prev = 0.0;
  std::vector<double> arm_price;
  std::vector<std::int64_t> arm_pulls;
  std::vector<double> arm_reward_sum;
};

// ---------------------------------------------------------------------------
// DGIA
// ---------------------------------------------------------------------------

class DgiaAllocator final : public Allocator {
 public:
  DgiaAllocator(ActionSet actions, double gamma, double rho0, std::string label = "dgia")
      : actions_(actions), rho0_(rho0), label_(std::move(label)) {
    state_.gamma = gamma;
  }

  StepResult step(const AllocatorView& view, AgentGate& gate) override {
    StepResult result;
    double remaining = view.budget;
    std::int64_t activated = 0;
    for (UserId id : state_.priority) {
      double& rho = state_.rho.at(id);
      double gap = preference_gap(view.prefs(id), view.actions.target);
      double r = dgia_incentive(rho, view.theta(id), state_.gaup_prev, gap);
      if (r > remaining) r = remaining;
      Action a = gate.offer_and_observe(id, r);
      result.offers[id] = r;
      result.actions[id] = a;
      bool took = a == view.actions.target;
      if (took) {
        remaining -= r;
        ++activated;
      }
      rho = update_sensitivity(rho, state_.omega.at(id), took, state_.gamma);
    }
    if (!state_.priority.empty())
      state_.gaup_prev =
          static_cast<double>(activated) / static_cast<double>(state_.priority.size());
    sort_priority(view);
    result.spend = view.budget - remaining;
    return result;
  }

  void add_user(UserId id, const std::vector<double>& preferences) override {
    if (state_.rho.count(id)) throw std::invalid_argument("DgiaAllocator: duplicate user");
    state_.rho[id] = rho0_;
    state_.omega[id] = preference_ratio(preferences, actions_.target);
    state_.priority.push_back(id);
  }

  void remove_user(UserId id) override {
    state_.rho.erase(id);
    state_.omega.erase(id);
    state_.priority.erase(std::find(state_.priority.begin(), state_.priority.end(), id));
  }

  std::string name() const override { return label_; }
  const AllocatorState& state() const { return state_; }

 private:
  // Descending theta + rho; ties break toward the lower user id.
  void sort_priority(const AllocatorView& view) {
    std::sort(state_.priority.begin(), state_.priority.end(), [&](UserId a, UserId b) {
      double sa = view.theta(a) + state_.rho.at(a);
      double sb = view.theta(b) + state_.rho.at(b);
      if (sa != sb) return sa > sb;
      return a < b;
    });
  }

  ActionSet actions_;
  double rho0_;
  std::string label_;
  AllocatorState state_;
};

// ---------------------------------------------------------------------------
// Baselines
// ---------------------------------------------------------------------------

class UniformAllocator final : public Allocator {
 public:
  StepResult step(const AllocatorView& view, AgentGate& gate) override {
    StepResult result;
    double remaining = view.budget;
    const auto& users = *view.users;
    if (users.empty()) return result;
    double share = view.budget / static_cast<double>(users.size());
    for (UserId id : users) {
      double r = std::min(share, remaining);
      Action a = gate.offer_and_observe(id, r);
      result.offers[id] = r;
      result.actions[id] = a;
      if (a == view.actions.target) remaining -= r;
    }
    result.spend = view.budget - remaining;
    return result;
  }

  void add_user(UserId, const std::vector<double>&) override {}
  void remove_user(UserId) override {}
  std::string name() const override { return "uniform"; }
};

class NoIncentiveAllocator final : public Allocator {
 public:
  StepResult step(const AllocatorView& view, AgentGate& gate) override {
    StepResult result;
    for (UserId id : *view.users) {
      Action a = gate.offer_and_observe(id, 0.0);
      result.offers[id] = 0.0;
      result.actions[id] = a;
    }
    return result;
  }

  void add_user(UserId, const std::vector<double>&) override {}
  void remove_user(UserId) override {}
  std::string name() const override { return "none"; }
};

// Budgeted bandit over a fixed price grid. One arm is selected per step and
// its price offered to every user; every offer is a pull with reward 1 on
// acceptance. Reconstruction of the published baseline: reward-per-cost UCB1
// with an epsilon guard on the free arm.
class DbpUcbAllocator final : public Allocator {
 public:
  // One grid notch: small enough to guard the free arm's division, large
  // enough that an unrewarded free arm's index can actually decay below the
  // paid arms' within a short run.
  static constexpr double kPriceEpsilon = 0.25;

  DbpUcbAllocator() {
    for (int i = 0; i <= 8; ++i) state_.arm_price.push_back(0.25 * i);
    state_.arm_pulls.assign(state_.arm_price.size(), 0);
    state_.arm_reward_sum.assign(state_.arm_price.size(), 0.0);
  }

  StepResult step(const AllocatorView& view, AgentGate& gate) override {
    StepResult result;
    std::size_t arm = select_arm();
    double price = state_.arm_price[arm];
    double remaining = view.budget;
    for (UserId id : *view.users) {
      double r = std::min(price, remaining);
      Action a = gate.offer_and_observe(id, r);
      result.offers[id] = r;
      result.actions[id] = a;
      bool took = a == view.actions.target;
      if (took) remaining -= r;
      state_.arm_pulls[arm] += 1;
      state_.arm_reward_sum[arm] += took ? 1.0 : 0.0;
    }
    result.spend = view.budget - remaining;
    return result;
  }

  void add_user(UserId, const std::vector<double>&) override {}
  void remove_user(UserId) override {}
  std::string name() const override { return "dbp-ucb"; }
  const AllocatorState& state() const { return state_; }

  std::size_t select_arm() const {
    for (std::size_t k = 0; k < state_.arm_pulls.size(); ++k)
      if (state_.arm_pulls[k] == 0) return k;
    double total = 0.0;
    for (std::int64_t n : state_.arm_pulls) total += static_cast<double>(n);
    std::size_t best = 0;
    double best_score = -1.0;
    for (std::size_t k = 0; k < state_.arm_price.size(); ++k) {
      double n = static_cast<double>(state_.arm_pulls[k]);
      double mean = state_.arm_reward_sum[k] / n;
      double bonus = std::sqrt(2.0 * std::log(total) / n);
      double score = (mean + bonus) / std::max(state_.arm_price[k], kPriceEpsilon);
      if (score > best_score) {
        best_score = score;
        best = k;
      }
    }
    return best;
  }

 private:
  AllocatorState state_;
};

// ---------------------------------------------------------------------------
// Strategy registry
// ---------------------------------------------------------------------------

enum class EstimatorKind { none, iud, ipe };

struct StrategySpec {
  EstimatorKind estimator = EstimatorKind::none;
  std::string allocator;  // "dgia" | "uniform" | "none" | "dbp-ucb"
  std::string name;       // the full registered name
};

inline const std::vector<std::string>& strategy_names() {
  static const std::vector<std::string> names = {"iud+dgia", "ipe+dgia", "dgia",
                                                 "dbp-ucb",  "uniform",  "none"};
  return names;
}

inline StrategySpec parse_strategy(const std::string& name) {
  StrategySpec spec;
  spec.name = name;
  if (name == "iud+dgia") {
    spec.estimator = EstimatorKind::iud;
    spec.allocator = "dgia";
  } else if (name == "ipe+dgia") {
    spec.estimator = EstimatorKind::ipe;
    spec.allocator = "dgia";
  } else if (name == "dgia" || name == "dbp-ucb" || name == "uniform" || name == "none") {
    spec.allocator = name;
  } else {
    throw std::invalid_argument("unknown strategy: " + name);
  }
  return spec;
}

inline std::unique_ptr<Allocator> make_allocator(const StrategySpec& spec, ActionSet actions,
                                                 double gamma, double rho0) {
  if (spec.allocator == "dgia")
    return std::make_unique<DgiaAllocator>(actions, gamma, rho0, spec.name);
  if (spec.allocator == "uniform") return std::make_unique<UniformAllocator>();
  if (spec.allocator == "none") return std::make_unique<NoIncentiveAllocator>();
  if (spec.allocator == "dbp-ucb") return std::make_unique<DbpUcbAllocator>();
  throw std::invalid_argument("unknown allocator: " + spec.allocator);
}

}  // namespace incent
