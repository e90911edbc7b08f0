#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "incent/types.hpp"

namespace incent {

// Read-only, non-owning view of behavior histories, frozen for a pass.
using HistoryView = std::map<UserId, const History*>;

enum class EstimatorMode {
  full_history,  // decay-weighted over the influencer's whole history
  most_recent,   // scored against the single most recent prior behavior only
};

// Decay of one behavior's influence: e^(-lambda*(t-t')) on an action match,
// zero otherwise.
inline double pair_decay(int t, int t_prime, bool same_action, double lambda) {
  if (t_prime >= t) throw std::invalid_argument("pair_decay: t_prime must precede t");
  if (!same_action) return 0.0;
  return std::exp(-lambda * static_cast<double>(t - t_prime));
}

// Probability that the influencer drove an observed action at step t: the
// decay-weighted fraction of the influencer's strictly-prior history that
// matches the observed action. No prior history yields 0.
inline double behavior_influence_prob(const History& influencer, int t, Action observed,
                                      double lambda) {
  double num = 0.0, den = 0.0;
  for (const Behavior& b : influencer) {
    if (b.step >= t) break;  // histories are step-ordered
    double decay = std::exp(-lambda * static_cast<double>(t - b.step));
    den += decay;
    if (b.action == observed) num += decay;
  }
  return den > 0.0 ? num / den : 0.0;
}

namespace detail {
// The most-recent-behavior variant: 1 if the influencer's latest prior
// action matches, else 0 (also 0 with no prior behavior).
inline double recent_influence_prob(const History& influencer, int t, Action observed) {
  const Behavior* latest = nullptr;
  for (const Behavior& b : influencer) {
    if (b.step >= t) break;
    latest = &b;
  }
  return (latest != nullptr && latest->action == observed) ? 1.0 : 0.0;
}

inline double per_behavior_prob(const History& influencer, int t, Action observed, double lambda,
                                EstimatorMode mode) {
  return mode == EstimatorMode::full_history
             ? behavior_influence_prob(influencer, t, observed, lambda)
             : recent_influence_prob(influencer, t, observed);
}
}  // namespace detail

// P(v_j | v_i): mean over every influencee behavior of the per-behavior
// probability against the influencer's earlier history. Directed; not
// symmetric in general.
inline double user_influence_prob(const History& influencer, const History& influencee,
                                  double lambda,
                                  EstimatorMode mode = EstimatorMode::full_history) {
  if (influencee.empty())
    throw std::invalid_argument("user_influence_prob: influencee has no behaviors");
  double sum = 0.0;
  for (const Behavior& b : influencee)
    sum += detail::per_behavior_prob(influencer, b.step, b.action, lambda, mode);
  return sum / static_cast<double>(influencee.size());
}

struct InfluenceEstimate {
  std::map<std::pair<UserId, UserId>, double> pairwise;  // (influencer, influencee)
  std::map<UserId, double> degrees;
  double lambda = 0.1;
  int last_step = 0;
};

// Full estimation pass straight from raw histories. Users with no recorded
// behaviors contribute zero rows; degrees are the row means over the other
// |V|-1 users.
inline InfluenceEstimate influential_degrees(const HistoryView& histories, double lambda,
                                             EstimatorMode mode = EstimatorMode::full_history) {
  if (histories.size() < 2)
    throw std::invalid_argument("influential_degrees: need at least 2 users");
  InfluenceEstimate est;
  est.lambda = lambda;
  for (const auto& [vi, hist_i] : histories)
    if (hist_i != nullptr && !hist_i->empty())
      est.last_step = std::max(est.last_step, hist_i->back().step);
  const double denom = static_cast<double>(histories.size() - 1);
  for (const auto& [vi, hist_i] : histories) {
    double row_sum = 0.0;
    for (const auto& [vj, hist_j] : histories) {
      if (vi == vj) continue;
      double p = 0.0;
      if (hist_i != nullptr && hist_j != nullptr && !hist_j->empty()) {
        double sum = 0.0;
        for (const Behavior& b : *hist_j)
          sum += detail::per_behavior_prob(*hist_i, b.step, b.action, lambda, mode);
        p = sum / static_cast<double>(hist_j->size());
      }
      est.pairwise[{vi, vj}] = p;
      row_sum += p;
    }
    est.degrees[vi] = row_sum / denom;
  }
  return est;
}

inline InfluenceEstimate ipe_degrees(const HistoryView& histories, double lambda) {
  return influential_degrees(histories, lambda, EstimatorMode::most_recent);
}

// ---------------------------------------------------------------------------
// Incremental tracker
// ---------------------------------------------------------------------------

// Maintains the pairwise table across steps without rescanning histories.
// Per user it carries decayed per-action sums D_i(t, a) and their total;
// folding one step in costs O(|V|^2) for the pair numerators plus the degree
// pass. Values match a from-scratch recomputation up to rounding.
class InfluenceTracker {
 public:
  InfluenceTracker(double lambda, int action_count,
                   EstimatorMode mode = EstimatorMode::full_history)
      : lambda_(lambda), step_decay_(std::exp(-lambda)), actions_(action_count), mode_(mode) {}

  void add_user(UserId id) {
    if (index_.count(id)) throw std::invalid_argument("InfluenceTracker: duplicate user");
    if (live_ == capacity_) grow(std::max<std::size_t>(2 * capacity_, 16));
    std::size_t s = live_++;
    ids_[s] = id;
    index_[id] = s;
    std::fill_n(&decay_[s * actions_], actions_, 0.0);
    decay_total_[s] = 0.0;
    hist_len_[s] = 0;
    last_action_[s] = kNoAction;
    theta_[s] = 0.0;
    for (std::size_t j = 0; j < live_; ++j) {
      num_[s * capacity_ + j] = 0.0;
      num_[j * capacity_ + s] = 0.0;
    }
  }

  void remove_user(UserId id) {
    auto it = index_.find(id);
    if (it == index_.end()) throw std::invalid_argument("InfluenceTracker: unknown user");
    std::size_t s = it->second;
    std::size_t last = live_ - 1;
    index_.erase(it);
    if (s != last) {
      ids_[s] = ids_[last];
      index_[ids_[s]] = s;
      std::copy_n(&decay_[last * actions_], actions_, &decay_[s * actions_]);
      decay_total_[s] = decay_total_[last];
      hist_len_[s] = hist_len_[last];
      last_action_[s] = last_action_[last];
      theta_[s] = theta_[last];
      for (std::size_t j = 0; j < live_; ++j) num_[s * capacity_ + j] = num_[last * capacity_ + j];
      for (std::size_t i = 0; i < live_; ++i) num_[i * capacity_ + s] = num_[i * capacity_ + last];
      num_[s * capacity_ + s] = 0.0;
    }
    --live_;
  }

  std::size_t live_count() const { return live_; }
  bool has_user(UserId id) const { return index_.count(id) != 0; }

  // Folds in one completed step. `actions` must hold exactly one action for
  // every live user. Degrees are refreshed at the end of the pass.
  void observe_step(int step, const std::vector<std::pair<UserId, Action>>& actions) {
    if (actions.size() != live_)
      throw std::invalid_argument("InfluenceTracker: action set does not cover population");
    std::vector<Action> act(live_, kNoAction);
    for (const auto& [id, a] : actions) {
      auto it = index_.find(id);
      if (it == index_.end()) throw std::invalid_argument("InfluenceTracker: unknown actor");
      if (act[it->second] != kNoAction)
        throw std::invalid_argument("InfluenceTracker: duplicate actor");
      if (a < 0 || a >= actions_) throw std::invalid_argument("InfluenceTracker: bad action");
      act[it->second] = a;
    }

    // Pair numerators against strictly-prior influencer history.
    std::vector<double> q(static_cast<std::size_t>(actions_));
    for (std::size_t i = 0; i < live_; ++i) {
      if (mode_ == EstimatorMode::full_history) {
        if (decay_total_[i] <= 0.0) continue;
        for (int a = 0; a < actions_; ++a)
          q[static_cast<std::size_t>(a)] = decay_[i * actions_ + static_cast<std::size_t>(a)] /
                                           decay_total_[i];
      } else {
        if (last_action_[i] == kNoAction) continue;
        std::fill(q.begin(), q.end(), 0.0);
        q[static_cast<std::size_t>(last_action_[i])] = 1.0;
      }
      double* row = &num_[i * capacity_];
      for (std::size_t j = 0; j < live_; ++j)
        row[j] += q[static_cast<std::size_t>(act[j])];
      row[i] -= q[static_cast<std::size_t>(act[i])];  // no self pair
    }

    // Fold the new behaviors into the decayed sums for the next step.
    for (std::size_t i = 0; i < live_; ++i) {
      double* d = &decay_[i * actions_];
      for (int a = 0; a < actions_; ++a) d[a] *= step_decay_;
      d[act[i]] += step_decay_;
      decay_total_[i] = step_decay_ * (decay_total_[i] + 1.0);
      last_action_[i] = act[i];
      hist_len_[i] += 1;
    }
    last_step_ = step;
    refresh_degrees();
  }

  // Recomputes degrees over the current population; used after churn so the
  // |V|-1 denominator tracks the live user set.
  void refresh_degrees() {
    if (live_ < 2) {
      std::fill_n(theta_.begin(), live_, 0.0);
      return;
    }
    std::vector<double> inv_len(live_, 0.0);
    for (std::size_t j = 0; j < live_; ++j)
      if (hist_len_[j] > 0) inv_len[j] = 1.0 / static_cast<double>(hist_len_[j]);
    const double denom = static_cast<double>(live_ - 1);
    for (std::size_t i = 0; i < live_; ++i) {
      const double* row = &num_[i * capacity_];
      double sum = 0.0;
      for (std::size_t j = 0; j < live_; ++j) sum += row[j] * inv_len[j];
      theta_[i] = sum / denom;
    }
  }

  double theta(UserId id) const { return theta_[index_.at(id)]; }

  double pairwise(UserId influencer, UserId influencee) const {
    std::size_t i = index_.at(influencer);
    std::size_t j = index_.at(influencee);
    if (i == j) throw std::invalid_argument("InfluenceTracker: self pair");
    if (hist_len_[j] == 0) return 0.0;
    return num_[i * capacity_ + j] / static_cast<double>(hist_len_[j]);
  }

  InfluenceEstimate snapshot() const {
    InfluenceEstimate est;
    est.lambda = lambda_;
    est.last_step = last_step_;
    for (const auto& [vi, i] : index_) {
      est.degrees[vi] = theta_[i];
      for (const auto& [vj, j] : index_) {
        if (vi == vj) continue;
        est.pairwise[{vi, vj}] =
            hist_len_[j] > 0 ? num_[i * capacity_ + j] / static_cast<double>(hist_len_[j]) : 0.0;
      }
    }
    return est;
  }

 private:
  void grow(std::size_t new_capacity) {
    std::vector<double> num(new_capacity * new_capacity, 0.0);
    for (std::size_t i = 0; i < live_; ++i)
      std::copy_n(&num_[i * capacity_], live_, &num[i * new_capacity]);
    num_.swap(num);
    decay_.resize(new_capacity * static_cast<std::size_t>(actions_), 0.0);
    decay_total_.resize(new_capacity, 0.0);
    hist_len_.resize(new_capacity, 0);
    last_action_.resize(new_capacity, kNoAction);
    theta_.resize(new_capacity, 0.0);
    ids_.resize(new_capacity, 0);
    capacity_ = new_capacity;
  }

  double lambda_;
  double step_decay_;
  int actions_;
  EstimatorMode mode_;
  std::size_t capacity_ = 0;
  std::size_t live_ = 0;
  int last_step_ = 0;
  std::vector<double> num_;          // capacity x capacity, row = influencer
  std::vector<double> decay_;        // capacity x actions
  std::vector<double> decay_total_;  // capacity
  std::vector<std::int64_t> hist_len_;
  std::vector<Action> last_action_;
  std::vector<double> theta_;
  std::vector<UserId> ids_;
  std::map<UserId, std::size_t> index_;
};

}  // namespace incent
