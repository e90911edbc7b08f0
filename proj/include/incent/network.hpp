#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "incent/rng.hpp"
#include "incent/types.hpp"

namespace incent {

constexpr double kWeightSumTolerance = 1e-9;

struct InEdge {
  UserId source = 0;
  double weight = 0.0;
};

// Directed influence graph. Per-user incoming weight sums stay <= 1 once
// weights are assigned; the allocator side never sees this structure.
class SocialNetwork {
 public:
  struct Node {
    std::vector<InEdge> in;        // who influences this user
    std::vector<UserId> out;       // whom this user influences
  };

  bool has_user(UserId id) const { return nodes_.count(id) != 0; }

  void add_user(UserId id) {
    if (!nodes_.emplace(id, Node{}).second)
      throw std::invalid_argument("add_user: id already present: " + std::to_string(id));
  }

  void add_user_if_absent(UserId id) { nodes_.emplace(id, Node{}); }

  bool has_edge(UserId src, UserId dst) const {
    auto it = nodes_.find(dst);
    if (it == nodes_.end()) return false;
    for (const InEdge& e : it->second.in)
      if (e.source == src) return true;
    return false;
  }

  void add_edge(UserId src, UserId dst, double weight) {
    if (src == dst) throw std::invalid_argument("add_edge: self-loop");
    auto si = nodes_.find(src);
    auto di = nodes_.find(dst);
    if (si == nodes_.end() || di == nodes_.end())
      throw std::invalid_argument("add_edge: endpoint not in network");
    if (has_edge(src, dst)) throw std::invalid_argument("add_edge: duplicate edge");
    di->second.in.push_back({src, weight});
    si->second.out.push_back(dst);
    ++edge_count_;
  }

  // Removes the user and every incident edge.
  void remove_user(UserId id) {
    auto it = nodes_.find(id);
    if (it == nodes_.end())
      throw std::invalid_argument("remove_user: unknown id " + std::to_string(id));
    for (const InEdge& e : it->second.in) {
      auto& out = nodes_.at(e.source).out;
      out.erase(std::find(out.begin(), out.end(), id));
      --edge_count_;
    }
    for (UserId dst : it->second.out) {
      auto& in = nodes_.at(dst).in;
      in.erase(std::find_if(in.begin(), in.end(),
                            [&](const InEdge& e) { return e.source == id; }));
      --edge_count_;
    }
    nodes_.erase(it);
  }

  const std::vector<InEdge>& in_edges(UserId id) const { return nodes_.at(id).in; }
  const std::vector<UserId>& out_neighbors(UserId id) const { return nodes_.at(id).out; }

  double incoming_sum(UserId id) const {
    double s = 0.0;
    for (const InEdge& e : nodes_.at(id).in) s += e.weight;
    return s;
  }

  // Scales the user's incoming weights by 1/S when their sum S exceeds 1.
  // Relative strengths are preserved; Definition-2 style cap is restored.
  void clamp_incoming_sum(UserId id) {
    double s = incoming_sum(id);
    if (s > 1.0) {
      for (InEdge& e : nodes_.at(id).in) e.weight /= s;
    }
  }

  void set_in_weights(UserId id, const std::vector<double>& weights) {
    auto& in = nodes_.at(id).in;
    if (weights.size() != in.size())
      throw std::invalid_argument("set_in_weights: size mismatch");
    for (std::size_t i = 0; i < in.size(); ++i) in[i].weight = weights[i];
  }

  std::size_t user_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  std::vector<UserId> users() const {  // ascending
    std::vector<UserId> ids;
    ids.reserve(nodes_.size());
    for (const auto& [id, node] : nodes_) ids.push_back(id);
    return ids;
  }

  UserId max_user_id() const {
    if (nodes_.empty()) throw std::logic_error("max_user_id: empty network");
    return nodes_.rbegin()->first;
  }

  bool weighted() const { return weighted_; }
  void mark_weighted() { weighted_ = true; }

  // Structural invariants: no self-loops, no duplicate edges, endpoints
  // exist, in/out views consistent, and (when weighted) in-sums <= 1.
  void validate() const {
    std::size_t counted = 0;
    for (const auto& [id, node] : nodes_) {
      std::set<UserId> seen;
      double sum = 0.0;
      for (const InEdge& e : node.in) {
        if (e.source == id) throw std::logic_error("validate: self-loop at " + std::to_string(id));
        if (!seen.insert(e.source).second)
          throw std::logic_error("validate: duplicate edge into " + std::to_string(id));
        if (!nodes_.count(e.source)) throw std::logic_error("validate: dangling source");
        const auto& out = nodes_.at(e.source).out;
        if (std::find(out.begin(), out.end(), id) == out.end())
          throw std::logic_error("validate: missing out entry");
        sum += e.weight;
        ++counted;
      }
      if (weighted_ && sum > 1.0 + kWeightSumTolerance)
        throw std::logic_error("validate: incoming weight sum > 1 at user " + std::to_string(id));
    }
    if (counted != edge_count_) throw std::logic_error("validate: edge count drift");
  }

 private:
  std::map<UserId, Node> nodes_;
  std::size_t edge_count_ = 0;
  bool weighted_ = false;
};

// ---------------------------------------------------------------------------
// Ingestion
// ---------------------------------------------------------------------------

// Parses a SNAP-style edge list: one "src dst" pair per line, '#' comment
// lines ignored. Self-loops are dropped (the node is still registered),
// duplicate (src, dst) pairs collapse to one edge. Weights stay unset.
// When `symmetrize` is set every pair is expanded to both directions,
// for datasets whose ties are mutual.
inline SocialNetwork load_edge_list(const std::string& text, bool symmetrize = false) {
  SocialNetwork g;
  std::unordered_set<std::uint64_t> seen;
  auto key = [](UserId a, UserId b) {
    return (static_cast<std::uint64_t>(a) << 32) ^ static_cast<std::uint32_t>(b);
  };
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::size_t data_lines = 0;
  std::vector<std::pair<UserId, UserId>> pending;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    std::istringstream ls(line);
    UserId a, b;
    std::string extra;
    if (!(ls >> a >> b) || (ls >> extra))
      throw std::runtime_error("edge list parse error at line " + std::to_string(line_no));
    ++data_lines;
    g.add_user_if_absent(a);
    g.add_user_if_absent(b);
    if (a == b) continue;
    if (seen.insert(key(a, b)).second) pending.emplace_back(a, b);
    if (symmetrize && seen.insert(key(b, a)).second) pending.emplace_back(b, a);
  }
  if (data_lines == 0) throw std::runtime_error("edge list is empty");
  for (auto [a, b] : pending) g.add_edge(a, b, 0.0);
  return g;
}

// Edge-list text for a network (one "src dst" per line, ascending source,
// ascending target). Weights are not serialized.
inline std::string to_edge_list(const SocialNetwork& g) {
  std::ostringstream out;
  for (UserId src : g.users()) {
    std::vector<UserId> targets = g.out_neighbors(src);
    std::sort(targets.begin(), targets.end());
    for (UserId dst : targets) out << src << " " << dst << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Preprocessing
// ---------------------------------------------------------------------------

// Draws a weight in (0, 1] for every edge, then rescales each user's
// incoming weights by 1/S wherever their sum S exceeds 1. Relative edge
// strengths survive the rescale. Deterministic per rng state: users
// ascending, each user's in-list in stored order.
inline void assign_weights(SocialNetwork& g, Rng& rng) {
  if (g.weighted()) throw std::invalid_argument("assign_weights: already weighted");
  for (UserId id : g.users()) {
    std::vector<double> w;
    w.reserve(g.in_edges(id).size());
    for (std::size_t i = 0; i < g.in_edges(id).size(); ++i)
      w.push_back(rng.uniform_open_closed());
    g.set_in_weights(id, w);
    g.clamp_incoming_sum(id);
  }
  g.mark_weighted();
}

inline void assign_weights(SocialNetwork& g, std::uint64_t seed) {
  Rng rng(seed);
  assign_weights(g, rng);
}

using PreferenceTable = std::map<UserId, std::vector<double>>;

// A fresh preference vector: `action_count` uniforms in [0, 1]. All-zero
// vectors are redrawn (the preference ratio is undefined on them).
inline std::vector<double> draw_preferences(int action_count, Rng& rng) {
  if (action_count < 2) throw std::invalid_argument("draw_preferences: need >= 2 actions");
  std::vector<double> p(static_cast<std::size_t>(action_count));
  for (;;) {
    bool any = false;
    for (double& x : p) {
      x = rng.uniform01();
      any = any || x > 0.0;
    }
    if (any) return p;
  }
}

inline PreferenceTable assign_preferences(const SocialNetwork& g, int action_count, Rng& rng) {
  PreferenceTable table;
  for (UserId id : g.users()) table.emplace(id, draw_preferences(action_count, rng));
  return table;
}

inline PreferenceTable assign_preferences(const SocialNetwork& g, int action_count,
                                          std::uint64_t seed) {
  Rng rng(seed);
  return assign_preferences(g, action_count, rng);
}

// ---------------------------------------------------------------------------
// Churn
// ---------------------------------------------------------------------------

struct Attachment {
  UserId source = 0;
  UserId target = 0;
  double weight = 0.0;
};

struct Joiner {
  UserId id = 0;
  std::vector<Attachment> edges;
  std::vector<double> preferences;
};

struct ChurnEvent {
  int step = 0;
  std::vector<Joiner> joiners;
  std::vector<UserId> leavers;
};

// The skeleton of an event: everything except sampled edge endpoints,
// weights, and preferences. This is what the replay log stores.
struct ChurnOutline {
  int step = 0;
  std::vector<std::pair<UserId, int>> joins;  // (new id, raw attachment draw)
  std::vector<UserId> leaves;
};

struct ChurnParams {
  int horizon = 150;
  int join_min = 1, join_max = 50;
  int leave_min = 1, leave_max = 20;
  int attach_min = 1, attach_max = 20;
  int leave_period = 5;
  int action_count = 4;
};

namespace detail {
// k distinct picks from pool (ascending result), Floyd's algorithm.
inline std::vector<UserId> sample_distinct(Rng& rng, const std::vector<UserId>& pool,
                                           std::size_t k) {
  std::set<std::size_t> chosen;
  const std::size_t n = pool.size();
  for (std::size_t j = n - k; j < n; ++j) {
    auto t = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(j)));
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<UserId> out;
  out.reserve(k);
  for (std::size_t i : chosen) out.push_back(pool[i]);
  return out;
}
}  // namespace detail

// Draws the who-and-when skeleton: joiner ids with raw attachment counts at
// every step, leaver ids at every `leave_period`-th step. Leaver draws are
// truncated to the live population; an empty network yields no leavers.
inline std::vector<ChurnOutline> generate_churn_outline(const ChurnParams& cfg,
                                                        const std::vector<UserId>& initial_users,
                                                        UserId first_new_id, Rng& rng) {
  std::set<UserId> live(initial_users.begin(), initial_users.end());
  UserId next_id = first_new_id;
  std::vector<ChurnOutline> outline;
  outline.reserve(static_cast<std::size_t>(cfg.horizon));
  for (int t = 1; t <= cfg.horizon; ++t) {
    ChurnOutline ev;
    ev.step = t;
    if (cfg.leave_period > 0 && t % cfg.leave_period == 0 && !live.empty()) {
      auto want = static_cast<std::size_t>(rng.uniform_int(cfg.leave_min, cfg.leave_max));
      std::size_t k = std::min(want, live.size());
      if (k > 0) {
        std::vector<UserId> pool(live.begin(), live.end());
        ev.leaves = detail::sample_distinct(rng, pool, k);
        for (UserId id : ev.leaves) live.erase(id);
      }
    }
    int joins = static_cast<int>(rng.uniform_int(cfg.join_min, cfg.join_max));
    for (int j = 0; j < joins; ++j) {
      int attach = static_cast<int>(rng.uniform_int(cfg.attach_min, cfg.attach_max));
      ev.joins.emplace_back(next_id, attach);
      ++next_id;
    }
    for (auto& [id, attach] : ev.joins) live.insert(id);
    outline.push_back(std::move(ev));
  }
  return outline;
}

// Fills in the random detail of an outline: attachment endpoints among the
// users live after that step's departures, a fair orientation coin per edge,
// raw uniform weights, and a fresh preference vector per joiner. Replaying
// the same outline with the same rng reproduces the original events.
inline std::vector<ChurnEvent> materialize_churn(const std::vector<ChurnOutline>& outline,
                                                 const std::vector<UserId>& initial_users,
                                                 int action_count, Rng& rng) {
  std::set<UserId> live(initial_users.begin(), initial_users.end());
  std::vector<ChurnEvent> events;
  events.reserve(outline.size());
  for (const ChurnOutline& o : outline) {
    ChurnEvent ev;
    ev.step = o.step;
    ev.leavers = o.leaves;
    for (UserId id : o.leaves) {
      if (!live.erase(id))
        throw std::runtime_error("churn outline leaves unknown user " + std::to_string(id));
    }
    std::vector<UserId> pool(live.begin(), live.end());
    for (const auto& [id, raw_attach] : o.joins) {
      Joiner joiner;
      joiner.id = id;
      std::size_t k = std::min(static_cast<std::size_t>(raw_attach), pool.size());
      for (UserId peer : detail::sample_distinct(rng, pool, k)) {
        bool outward = rng.uniform_int(0, 1) == 1;  // new user influences peer
        double w = rng.uniform_open_closed();
        if (outward)
          joiner.edges.push_back({id, peer, w});
        else
          joiner.edges.push_back({peer, id, w});
      }
      joiner.preferences = draw_preferences(action_count, rng);
      ev.joiners.push_back(std::move(joiner));
    }
    for (const auto& [id, raw_attach] : o.joins) live.insert(id);
    events.push_back(std::move(ev));
  }
  return events;
}

inline std::vector<ChurnEvent> generate_churn_schedule(const ChurnParams& cfg,
                                                       const std::vector<UserId>& initial_users,
                                                       UserId first_new_id,
                                                       std::uint64_t master_seed) {
  Rng skeleton = Rng::stream(master_seed, "churn-outline");
  Rng detail_rng = Rng::stream(master_seed, "churn-detail");
  auto outline = generate_churn_outline(cfg, initial_users, first_new_id, skeleton);
  return materialize_churn(outline, initial_users, cfg.action_count, detail_rng);
}

// Departures first (their edges vanish with them), then joiners with their
// attachment edges; incoming sums are re-clamped for affected targets only.
inline void apply_churn(SocialNetwork& g, const ChurnEvent& ev) {
  for (UserId id : ev.leavers) {
    if (!g.has_user(id))
      throw std::invalid_argument("apply_churn: leaver not present: " + std::to_string(id));
    g.remove_user(id);
  }
  for (const Joiner& j : ev.joiners) {
    if (g.has_user(j.id))
      throw std::invalid_argument("apply_churn: joiner id collision: " + std::to_string(j.id));
    g.add_user(j.id);
  }
  std::set<UserId> touched;
  for (const Joiner& j : ev.joiners) {
    for (const Attachment& a : j.edges) {
      g.add_edge(a.source, a.target, a.weight);
      touched.insert(a.target);
    }
  }
  for (UserId id : touched) g.clamp_incoming_sum(id);
}

// Line-oriented replay log: "t JOIN id k" / "t LEAVE id".
inline std::string serialize_churn_outline(const std::vector<ChurnOutline>& outline) {
  std::ostringstream out;
  for (const ChurnOutline& ev : outline) {
    for (UserId id : ev.leaves) out << ev.step << " LEAVE " << id << "\n";
    for (const auto& [id, attach] : ev.joins)
      out << ev.step << " JOIN " << id << " " << attach << "\n";
  }
  return out.str();
}

inline std::vector<ChurnOutline> parse_churn_outline(const std::string& text) {
  std::map<int, ChurnOutline> by_step;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream ls(line);
    int t;
    std::string kind;
    if (!(ls >> t >> kind))
      throw std::runtime_error("churn log parse error at line " + std::to_string(line_no));
    ChurnOutline& ev = by_step[t];
    ev.step = t;
    if (kind == "JOIN") {
      UserId id;
      int attach;
      if (!(ls >> id >> attach))
        throw std::runtime_error("churn log parse error at line " + std::to_string(line_no));
      ev.joins.emplace_back(id, attach);
    } else if (kind == "LEAVE") {
      UserId id;
      if (!(ls >> id))
        throw std::runtime_error("churn log parse error at line " + std::to_string(line_no));
      ev.leaves.push_back(id);
    } else {
      throw std::runtime_error("churn log parse error at line " + std::to_string(line_no));
    }
  }
  std::vector<ChurnOutline> outline;
  outline.reserve(by_step.size());
  for (auto& [t, ev] : by_step) outline.push_back(std::move(ev));
  return outline;
}

// ---------------------------------------------------------------------------
// Synthetic generators
// ---------------------------------------------------------------------------

// Mutual-pair random graph: `pairs` distinct unordered pairs, each expanded
// to two directed edges. Mimics friendship-style datasets.
inline SocialNetwork generate_pair_network(std::int64_t users, std::int64_t pairs, Rng& rng) {
  if (users < 2) throw std::invalid_argument("generate_pair_network: need >= 2 users");
  const std::int64_t max_pairs = users * (users - 1) / 2;
  if (pairs > max_pairs) throw std::invalid_argument("generate_pair_network: too many pairs");
  SocialNetwork g;
  for (UserId id = 0; id < users; ++id) g.add_user(id);
  std::unordered_set<std::uint64_t> seen;
  auto key = [&](UserId a, UserId b) {
    if (a > b) std::swap(a, b);
    return static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(users) +
           static_cast<std::uint64_t>(b);
  };
  std::int64_t made = 0;
  while (made < pairs) {
    UserId a = rng.uniform_int(0, users - 1);
    UserId b = rng.uniform_int(0, users - 1);
    if (a == b) continue;
    if (!seen.insert(key(a, b)).second) continue;
    g.add_edge(a, b, 0.0);
    g.add_edge(b, a, 0.0);
    ++made;
  }
  return g;
}

// Ego-style clustered graph: heavy-tailed communities, each a star around a
// hub that influences every member and is echoed by them, plus heavy fan-in
// onto a few lurkers. Follower-network shape: self-reinforcing consensus
// pockets whose hubs are the leverage points.
inline SocialNetwork generate_skewed_network(std::int64_t users, std::int64_t edges, Rng& rng) {
  if (users < 2) throw std::invalid_argument("generate_skewed_network: need >= 2 users");
  if (edges > users * (users - 1))
    throw std::invalid_argument("generate_skewed_network: too many edges");
  SocialNetwork g;
  for (UserId id = 0; id < users; ++id) g.add_user(id);

  // community sizes ~ (c+1)^-0.7, minimum 2 members, exact total
  const std::int64_t communities = std::max<std::int64_t>(2, users / 8);
  std::vector<double> mass(static_cast<std::size_t>(communities));
  double mass_sum = 0.0;
  for (std::int64_t c = 0; c < communities; ++c) {
    mass[static_cast<std::size_t>(c)] = std::pow(static_cast<double>(c + 1), -0.7);
    mass_sum += mass[static_cast<std::size_t>(c)];
  }
  std::vector<std::int64_t> size(static_cast<std::size_t>(communities));
  std::int64_t assigned = 0;
  for (std::int64_t c = 0; c < communities; ++c) {
    auto s = std::max<std::int64_t>(
        2, static_cast<std::int64_t>(static_cast<double>(users) *
                                     mass[static_cast<std::size_t>(c)] / mass_sum));
    size[static_cast<std::size_t>(c)] = s;
    assigned += s;
  }
  for (std::int64_t c = 0; assigned < users; c = (c + 1) % communities) {
    ++size[static_cast<std::size_t>(c)];
    ++assigned;
  }
  while (assigned > users) {
    for (std::int64_t c = communities - 1; c >= 0 && assigned > users; --c) {
      if (size[static_cast<std::size_t>(c)] > 2) {
        --size[static_cast<std::size_t>(c)];
        --assigned;
      }
    }
  }
  std::vector<std::int64_t> start(static_cast<std::size_t>(communities) + 1, 0);
  for (std::int64_t c = 0; c < communities; ++c)
    start[static_cast<std::size_t>(c) + 1] =
        start[static_cast<std::size_t>(c)] + size[static_cast<std::size_t>(c)];
  std::vector<std::int64_t> community(static_cast<std::size_t>(users));
  for (std::int64_t c = 0; c < communities; ++c)
    for (std::int64_t v = start[static_cast<std::size_t>(c)];
         v < start[static_cast<std::size_t>(c) + 1]; ++v)
      community[static_cast<std::size_t>(v)] = c;

  // public ids are a random relabeling, so id order carries no hint of the
  // community layout
  std::vector<UserId> label(static_cast<std::size_t>(users));
  for (std::int64_t v = 0; v < users; ++v) label[static_cast<std::size_t>(v)] = v;
  for (std::int64_t v = users - 1; v > 0; --v)
    std::swap(label[static_cast<std::size_t>(v)],
              label[static_cast<std::size_t>(rng.uniform_int(0, v))]);

  std::unordered_set<std::uint64_t> seen;
  auto key = [&](UserId a, UserId b) {
    return static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(users) +
           static_cast<std::uint64_t>(b);
  };
  std::int64_t made = 0;
  auto try_add = [&](UserId src, UserId dst) {
    if (src == dst || made >= edges) return false;
    if (!seen.insert(key(src, dst)).second) return false;
    g.add_edge(label[static_cast<std::size_t>(src)], label[static_cast<std::size_t>(dst)], 0.0);
    ++made;
    return true;
  };

  // hub spine covers every node: each member is influenced by its hub
  for (std::int64_t c = 0; c < communities; ++c) {
    UserId hub = start[static_cast<std::size_t>(c)];
    for (std::int64_t v = hub + 1; v < start[static_cast<std::size_t>(c) + 1]; ++v)
      try_add(hub, v);
  }

  // occasional peer ties, and an echo tie from every member back into the
  // hub: the hub tracks its community's majority, so capturing a community
  // means flipping most of it, and a captured community then holds itself
  for (std::int64_t c = 0; c < communities; ++c) {
    std::int64_t lo = start[static_cast<std::size_t>(c)];
    std::int64_t hi = start[static_cast<std::size_t>(c) + 1] - 1;
    for (std::int64_t v = lo + 1; v <= hi; ++v) {
      if (hi - lo >= 2 && rng.uniform01() < 0.05) {
        auto peer = static_cast<UserId>(rng.uniform_int(lo + 1, hi));
        try_add(v, peer);
      }
      try_add(v, lo);
    }
  }

  // the remaining mass lands on lurkers: the last ~20% of each community's
  // members soak up heavy fan-in (many weak influences, no influence back),
  // so total edge counts match published statistics without opening global
  // feedback loops
  std::vector<UserId> lurkers;
  for (std::int64_t c = 0; c < communities; ++c) {
    std::int64_t members = size[static_cast<std::size_t>(c)] - 1;
    std::int64_t lurk = members / 5;
    for (std::int64_t v = start[static_cast<std::size_t>(c) + 1] - lurk;
         v < start[static_cast<std::size_t>(c) + 1]; ++v)
      lurkers.push_back(static_cast<UserId>(v));
  }
  std::int64_t attempts = 0;
  const std::int64_t attempt_cap = 200 * edges;
  while (made < edges && !lurkers.empty() && attempts++ < attempt_cap) {
    UserId sink = lurkers[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(lurkers.size()) - 1))];
    auto src = static_cast<UserId>(rng.uniform_int(0, users - 1));
    try_add(src, sink);
  }
  while (made < edges) {  // saturated fan-in: spill to random edges
    auto a = static_cast<UserId>(rng.uniform_int(0, users - 1));
    auto b = static_cast<UserId>(rng.uniform_int(0, users - 1));
    try_add(a, b);
  }
  return g;
}

}  // namespace incent
