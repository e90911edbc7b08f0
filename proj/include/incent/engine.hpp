#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "incent/adm.hpp"
#include "incent/allocation.hpp"
#include "incent/csv.hpp"
#include "incent/influence.hpp"
#include "incent/metrics.hpp"
#include "incent/network.hpp"
#include "incent/rng.hpp"
#include "incent/types.hpp"

namespace incent {

struct ExperimentConfig {
  std::string name;     // run label; defaults to the strategy name
  std::string dataset;  // file path, or "synthetic:pairs:N:M" / "synthetic:skew:N:M"
  bool undirected = false;
  std::uint64_t seed = 0;
  int action_count = 4;
  Action target = 0;
  double budget = 0.0;  // replenished every step
  int horizon = 150;
  std::string strategy;
  double lambda = 0.1;
  double gamma = 0.9;
  double rho0 = 0.5;
  double theta0 = 0.0;
  bool churn = false;
  ChurnParams churn_params;
  std::string churn_log;  // replay an outline instead of drawing one
  bool dump_pairwise = false;
  std::string dump_dir;
  bool audit = false;  // per-step invariant checks

  void validate() const {
    if (dataset.empty()) throw std::invalid_argument("config: dataset missing");
    if (horizon < 1) throw std::invalid_argument("config: horizon must be >= 1");
    if (budget < 0.0) throw std::invalid_argument("config: budget must be >= 0");
    if (lambda <= 0.0) throw std::invalid_argument("config: lambda must be > 0");
    if (gamma <= 0.0 || gamma >= 1.0) throw std::invalid_argument("config: gamma in (0,1)");
    if (rho0 < 0.0 || rho0 > 1.0) throw std::invalid_argument("config: rho0 in [0,1]");
    ActionSet{action_count, target}.validate();
    parse_strategy(strategy);
    if (dump_pairwise && parse_strategy(strategy).estimator == EstimatorKind::none)
      throw std::invalid_argument("config: dump_pairwise needs an estimating strategy");
    if (dump_pairwise && dump_dir.empty())
      throw std::invalid_argument("config: dump_pairwise needs dump_dir");
    if (!churn_log.empty() && !churn)
      throw std::invalid_argument("config: churn_log requires churn = true");
  }
};

struct SimulationTrace {
  std::vector<StepRecord> records;
  RunSummary summary;
  ExperimentConfig config;
  double elapsed_seconds = 0.0;
  std::string churn_outline;  // replay log of the schedule actually applied
};

// ---------------------------------------------------------------------------
// Topology construction
// ---------------------------------------------------------------------------

inline SocialNetwork build_topology(const ExperimentConfig& cfg, Rng& topology_rng) {
  const std::string& spec = cfg.dataset;
  if (spec.rfind("synthetic:", 0) == 0) {
    std::istringstream in(spec.substr(10));
    std::string kind, n_str, m_str;
    if (!std::getline(in, kind, ':') || !std::getline(in, n_str, ':') || !std::getline(in, m_str))
      throw std::runtime_error("bad synthetic spec: " + spec);
    std::int64_t n = std::stoll(n_str);
    std::int64_t m = std::stoll(m_str);
    if (kind == "pairs") return generate_pair_network(n, m, topology_rng);
    if (kind == "skew") return generate_skewed_network(n, m, topology_rng);
    throw std::runtime_error("bad synthetic kind: " + kind);
  }
  std::ifstream file(spec);
  if (!file) throw std::runtime_error("cannot open dataset: " + spec);
  std::ostringstream text;
  text << file.rdbuf();
  return load_edge_list(text.str(), cfg.undirected);
}

namespace detail {

// Computes agent decisions on demand: utilities from preferences, the frozen
// previous-step action map, and the presented offer.
class EngineGate final : public AgentGate {
 public:
  EngineGate(const SocialNetwork& net, const std::map<UserId, AgentState>& agents,
             const ActionSet& actions, const ActionMap& prev)
      : net_(net), agents_(agents), actions_(actions), prev_(prev) {}

  Action offer_and_observe(UserId id, double offer) override {
    if (offer < 0.0) throw std::logic_error("offer below zero");
    auto it = agents_.find(id);
    if (it == agents_.end()) throw std::logic_error("offer to user outside the network");
    if (!served_.insert(id).second) throw std::logic_error("user offered twice in one step");
    return decide(net_, it->second, actions_, offer, prev_);
  }

  std::size_t served_count() const { return served_.size(); }

 private:
  const SocialNetwork& net_;
  const std::map<UserId, AgentState>& agents_;
  const ActionSet& actions_;
  const ActionMap& prev_;
  std::set<UserId> served_;
};

inline void dump_pairwise_csv(const InfluenceTracker& tracker, const std::string& dir, int step) {
  InfluenceEstimate est = tracker.snapshot();
  std::filesystem::create_directories(dir);
  std::ofstream out(dir + "/pairwise_step" + std::to_string(step) + ".csv");
  out << "influencer";
  for (const auto& [id, th] : est.degrees) out << "," << id;
  out << ",theta\n";
  for (const auto& [vi, th] : est.degrees) {
    out << vi;
    for (const auto& [vj, th2] : est.degrees) {
      out << ",";
      if (vi != vj) out << fmt_double(est.pairwise.at({vi, vj}));
      else out << "0";
    }
    out << "," << fmt_double(th) << "\n";
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Single run
// ---------------------------------------------------------------------------

// Step semantics: churn first, budget replenished, the t-1 action map frozen,
// then the strategy interleaves offers with observations; histories append
// afterwards and estimation runs at the end of the step. Bit-identical per
// (config, seed).
inline SimulationTrace run(const ExperimentConfig& cfg) {
  cfg.validate();
  auto started = std::chrono::steady_clock::now();

  StrategySpec strategy = parse_strategy(cfg.strategy);
  ActionSet actions{cfg.action_count, cfg.target};

  Rng topology_rng = Rng::stream(cfg.seed, "topology");
  SocialNetwork net = build_topology(cfg, topology_rng);
  {
    Rng weights_rng = Rng::stream(cfg.seed, "weights");
    assign_weights(net, weights_rng);
  }
  PreferenceTable preferences;
  {
    Rng pref_rng = Rng::stream(cfg.seed, "preferences");
    preferences = assign_preferences(net, cfg.action_count, pref_rng);
  }

  // Step 0: agents join, no actions yet.
  std::map<UserId, AgentState> agents;
  for (UserId id : net.users()) agents.emplace(id, AgentState{id, preferences.at(id), {}, kNoAction});

  std::vector<ChurnEvent> schedule;
  std::string churn_outline_text;
  if (cfg.churn) {
    ChurnParams params = cfg.churn_params;
    params.horizon = cfg.horizon;
    params.action_count = cfg.action_count;
    std::vector<ChurnOutline> outline;
    if (!cfg.churn_log.empty()) {
      std::ifstream file(cfg.churn_log);
      if (!file) throw std::runtime_error("cannot open churn log: " + cfg.churn_log);
      std::ostringstream text;
      text << file.rdbuf();
      outline = parse_churn_outline(text.str());
    } else {
      Rng skeleton_rng = Rng::stream(cfg.seed, "churn-outline");
      outline = generate_churn_outline(params, net.users(), net.max_user_id() + 1, skeleton_rng);
    }
    churn_outline_text = serialize_churn_outline(outline);
    Rng detail_rng = Rng::stream(cfg.seed, "churn-detail");
    schedule = materialize_churn(outline, net.users(), cfg.action_count, detail_rng);
  }
  std::map<int, const ChurnEvent*> events_by_step;
  for (const ChurnEvent& ev : schedule) events_by_step[ev.step] = &ev;

  std::unique_ptr<Allocator> allocator =
      make_allocator(strategy, actions, cfg.gamma, cfg.rho0);
  for (const auto& [id, agent] : agents) allocator->add_user(id, agent.preferences);

  std::optional<InfluenceTracker> tracker;
  if (strategy.estimator != EstimatorKind::none) {
    tracker.emplace(cfg.lambda, cfg.action_count,
                    strategy.estimator == EstimatorKind::iud ? EstimatorMode::full_history
                                                             : EstimatorMode::most_recent);
    for (const auto& [id, agent] : agents) tracker->add_user(id);
  }
  std::map<UserId, double> degrees;  // refreshed after every estimation pass

  SimulationTrace trace;
  trace.config = cfg;
  trace.churn_outline = churn_outline_text;
  trace.records.reserve(static_cast<std::size_t>(cfg.horizon));

  for (int t = 1; t <= cfg.horizon; ++t) {
    // (1) topology mutation at the start of the step
    if (auto ev_it = events_by_step.find(t); ev_it != events_by_step.end()) {
      const ChurnEvent& ev = *ev_it->second;
      apply_churn(net, ev);
      for (UserId id : ev.leavers) {
        agents.erase(id);
        preferences.erase(id);
        allocator->remove_user(id);
        if (tracker) tracker->remove_user(id);
      }
      for (const Joiner& j : ev.joiners) {
        agents.emplace(j.id, AgentState{j.id, j.preferences, {}, kNoAction});
        preferences.emplace(j.id, j.preferences);
        allocator->add_user(j.id, j.preferences);
        if (tracker) tracker->add_user(j.id);
      }
      if (tracker && (!ev.leavers.empty() || !ev.joiners.empty())) {
        tracker->refresh_degrees();  // |V|-1 follows the live population
        degrees.clear();
        for (const auto& [id, agent] : agents) degrees[id] = tracker->theta(id);
      }
    }
    if (agents.empty()) throw std::runtime_error("population emptied at step " + std::to_string(t));

    // (2) budget replenished; (3) previous actions frozen
    ActionMap prev;
    prev.reserve(agents.size() * 2);
    for (const auto& [id, agent] : agents)
      if (agent.current != kNoAction) prev.emplace(id, agent.current);

    std::vector<UserId> user_ids;
    user_ids.reserve(agents.size());
    for (const auto& [id, agent] : agents) user_ids.push_back(id);

    AllocatorView view;
    view.step = t;
    view.budget = cfg.budget;
    view.actions = actions;
    view.users = &user_ids;
    view.preferences = &preferences;
    view.degrees = tracker ? &degrees : nullptr;
    view.default_theta = cfg.theta0;

    // (4) offers interleaved with observations
    detail::EngineGate gate(net, agents, actions, prev);
    StepResult result = allocator->step(view, gate);
    if (gate.served_count() != agents.size())
      throw std::logic_error("allocator did not serve every user");
    if (result.spend > cfg.budget)
      throw std::logic_error("allocator overspent the per-step budget");

    // (5) histories append after the whole step resolves
    for (const auto& [id, a] : result.actions) agents.at(id).record(t, a);

    // (6) end-of-step estimation feeds the next step's offers
    if (tracker) {
      std::vector<std::pair<UserId, Action>> acted(result.actions.begin(), result.actions.end());
      tracker->observe_step(t, acted);
      degrees.clear();
      for (const auto& [id, agent] : agents) degrees[id] = tracker->theta(id);
      if (cfg.dump_pairwise) detail::dump_pairwise_csv(*tracker, cfg.dump_dir, t);
    }

    // (7) record the step
    StepRecord record;
    record.step = t;
    record.spend = result.spend;
    record.population = agents.size();
    record.gaup = gaup(result.actions, cfg.target);
    record.giac = giac(result.actions, result.offers, preferences, cfg.target);
    record.actions = std::move(result.actions);
    record.offers = std::move(result.offers);
    if (cfg.audit) {
      net.validate();
      if (record.giac > record.gaup + 1e-12) throw std::logic_error("audit: giac > gaup");
      if (record.spend < 0.0) throw std::logic_error("audit: negative spend");
      for (const auto& [id, r] : record.offers)
        if (r < 0.0 || !agents.count(id)) throw std::logic_error("audit: bad offer entry");
    }
    trace.records.push_back(std::move(record));
  }

  trace.summary = summarize(trace.records, cfg.strategy, cfg.budget);
  trace.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return trace;
}

// ---------------------------------------------------------------------------
// Run matrix
// ---------------------------------------------------------------------------

struct RunOutcome {
  std::optional<SimulationTrace> trace;
  std::string error;  // empty on success
};

// Independent configs on a small thread pool. Output order matches input
// order; failures are reported per config without aborting siblings.
inline std::vector<RunOutcome> run_matrix(const std::vector<ExperimentConfig>& cfgs,
                                          int parallelism) {
  if (cfgs.empty()) throw std::invalid_argument("run_matrix: no configs");
  if (parallelism < 1) parallelism = 1;
  std::vector<RunOutcome> out(cfgs.size());
  std::atomic<std::size_t> cursor{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = cursor.fetch_add(1);
      if (i >= cfgs.size()) return;
      try {
        out[i].trace = run(cfgs[i]);
      } catch (const std::exception& e) {
        out[i].error = e.what();
      }
    }
  };
  std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(parallelism), cfgs.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Trace and summary serialization
// ---------------------------------------------------------------------------

inline std::string trace_to_csv(const SimulationTrace& trace) {
  std::ostringstream out;
  out << "t,population,gaup,giac,spend,budget,strategy,seed\n";
  const std::string& label = trace.summary.strategy;
  for (const StepRecord& r : trace.records) {
    out << r.step << "," << r.population << "," << fmt_double(r.gaup) << ","
        << fmt_double(r.giac) << "," << fmt_double(r.spend) << ","
        << fmt_double(trace.config.budget) << "," << label << "," << trace.config.seed << "\n";
  }
  return out.str();
}

// Aggregate columns only; per-user actions and offers are not serialized.
inline SimulationTrace trace_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || split_csv_line(line).front() != "t")
    throw std::runtime_error("trace csv: bad header");
  SimulationTrace trace;
  std::string label;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != 8) throw std::runtime_error("trace csv: bad row");
    StepRecord r;
    r.step = std::stoi(f[0]);
    r.population = static_cast<std::size_t>(std::stoull(f[1]));
    r.gaup = parse_double(f[2]);
    r.giac = parse_double(f[3]);
    r.spend = parse_double(f[4]);
    trace.config.budget = parse_double(f[5]);
    label = f[6];
    trace.config.seed = std::stoull(f[7]);
    trace.records.push_back(std::move(r));
  }
  if (trace.records.empty()) throw std::runtime_error("trace csv: no rows");
  trace.config.strategy = label;
  trace.config.horizon = static_cast<int>(trace.records.size());
  trace.summary = summarize(trace.records, label, trace.config.budget);
  return trace;
}

inline const char* kSummaryHeader =
    "strategy,total_budget,spend,mean_gaup,mean_giac,utilization,r_mu,r_tau";

inline std::string summary_row_csv(const RunSummary& s, bool spend_meaningful = true) {
  std::ostringstream out;
  out << s.strategy << "," << fmt_double(s.total_budget) << ",";
  if (spend_meaningful)
    out << fmt_double(s.total_spend) << "," << fmt_double(s.mean_gaup) << ","
        << fmt_double(s.mean_giac) << "," << fmt_double(s.utilization);
  else
    out << "/," << fmt_double(s.mean_gaup) << "," << fmt_double(s.mean_giac) << ",/";
  out << "," << (s.r_mu ? fmt_double(*s.r_mu) : "/") << ","
      << (s.r_tau ? fmt_double(*s.r_tau) : "/");
  return out.str();
}

inline std::string summaries_to_csv(const std::vector<RunSummary>& rows) {
  std::ostringstream out;
  out << kSummaryHeader << "\n";
  for (const RunSummary& s : rows) out << summary_row_csv(s, s.strategy != "none") << "\n";
  return out.str();
}

inline std::vector<RunSummary> summaries_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || split_csv_line(line).front() != "strategy")
    throw std::runtime_error("summary csv: bad header");
  std::vector<RunSummary> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != 8) throw std::runtime_error("summary csv: bad row");
    RunSummary s;
    s.strategy = f[0];
    s.total_budget = parse_double(f[1]);
    s.total_spend = f[2] == "/" ? 0.0 : parse_double(f[2]);
    s.mean_gaup = parse_double(f[3]);
    s.mean_giac = parse_double(f[4]);
    s.utilization = f[5] == "/" ? 0.0 : parse_double(f[5]);
    if (f[6] != "/") s.r_mu = parse_double(f[6]);
    if (f[7] != "/") s.r_tau = parse_double(f[7]);
    rows.push_back(std::move(s));
  }
  return rows;
}

}  // namespace incent
