#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace incent {

using UserId = std::int64_t;
using Action = int;
constexpr Action kNoAction = -1;

// One recorded behavior: the action a user took at a time step.
struct Behavior {
  int step = 0;
  Action action = kNoAction;
};

using History = std::vector<Behavior>;

struct ActionSet {
  int count = 4;
  Action target = 0;  // the action the incentive provider pays for

  void validate() const {
    if (count < 2) throw std::invalid_argument("ActionSet: need >= 2 actions");
    if (target < 0 || target >= count) throw std::invalid_argument("ActionSet: bad target");
  }
};

// Gap between a user's top preference and the target preference. Zero when
// the target already is (or ties) the favorite.
inline double preference_gap(const std::vector<double>& preferences, Action target) {
  if (preferences.empty()) throw std::invalid_argument("preference_gap: empty preferences");
  double top = *std::max_element(preferences.begin(), preferences.end());
  return std::max(0.0, top - preferences[static_cast<std::size_t>(target)]);
}

}  // namespace incent
