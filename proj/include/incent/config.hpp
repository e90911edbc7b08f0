#pragma once

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "incent/engine.hpp"

namespace incent {

// Flat key-value experiment configs: one "key = value" per line, '#'
// comments. Strict: unknown keys are rejected, missing required keys are
// reported all at once.

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::runtime_error("config: bad boolean for '" + key + "': " + v);
}

inline double parse_num(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw std::runtime_error("config: bad number for '" + key + "': " + v);
  }
}

inline std::int64_t parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    std::int64_t x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw std::runtime_error("config: bad integer for '" + key + "': " + v);
  }
}

inline const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "name",          "dataset",        "undirected",      "seed",
      "actions",       "target",         "budget",          "horizon",
      "strategy",      "lambda",         "gamma",           "rho0",
      "theta0",        "churn",          "churn_join_min",  "churn_join_max",
      "churn_leave_min", "churn_leave_max", "churn_attach_min", "churn_attach_max",
      "churn_leave_period", "churn_log", "dump_pairwise",   "dump_dir",
      "audit"};
  return keys;
}

inline void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "name") cfg.name = value;
  else if (key == "dataset") cfg.dataset = value;
  else if (key == "undirected") cfg.undirected = parse_bool(key, value);
  else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
  else if (key == "actions") cfg.action_count = static_cast<int>(parse_int(key, value));
  else if (key == "target") cfg.target = static_cast<Action>(parse_int(key, value));
  else if (key == "budget") cfg.budget = parse_num(key, value);
  else if (key == "horizon") cfg.horizon = static_cast<int>(parse_int(key, value));
  else if (key == "strategy") cfg.strategy = value;
  else if (key == "lambda") cfg.lambda = parse_num(key, value);
  else if (key == "gamma") cfg.gamma = parse_num(key, value);
  else if (key == "rho0") cfg.rho0 = parse_num(key, value);
  else if (key == "theta0") cfg.theta0 = parse_num(key, value);
  else if (key == "churn") cfg.churn = parse_bool(key, value);
  else if (key == "churn_join_min") cfg.churn_params.join_min = static_cast<int>(parse_int(key, value));
  else if (key == "churn_join_max") cfg.churn_params.join_max = static_cast<int>(parse_int(key, value));
  else if (key == "churn_leave_min") cfg.churn_params.leave_min = static_cast<int>(parse_int(key, value));
  else if (key == "churn_leave_max") cfg.churn_params.leave_max = static_cast<int>(parse_int(key, value));
  else if (key == "churn_attach_min") cfg.churn_params.attach_min = static_cast<int>(parse_int(key, value));
  else if (key == "churn_attach_max") cfg.churn_params.attach_max = static_cast<int>(parse_int(key, value));
  else if (key == "churn_leave_period") cfg.churn_params.leave_period = static_cast<int>(parse_int(key, value));
  else if (key == "churn_log") cfg.churn_log = value;
  else if (key == "dump_pairwise") cfg.dump_pairwise = parse_bool(key, value);
  else if (key == "dump_dir") cfg.dump_dir = value;
  else if (key == "audit") cfg.audit = parse_bool(key, value);
  else throw std::runtime_error("config: unknown key '" + key + "'");
}

}  // namespace detail

// Splits one "key=value" pair (used for both config lines and overrides).
inline std::pair<std::string, std::string> split_key_value(const std::string& entry) {
  std::size_t eq = entry.find('=');
  if (eq == std::string::npos)
    throw std::runtime_error("config: expected key=value, got '" + entry + "'");
  std::string key = detail::trim(entry.substr(0, eq));
  std::string value = detail::trim(entry.substr(eq + 1));
  if (key.empty()) throw std::runtime_error("config: empty key in '" + entry + "'");
  return {key, value};
}

inline ExperimentConfig parse_config(const std::string& text,
                                     const std::vector<std::string>& overrides = {}) {
  ExperimentConfig cfg;
  std::set<std::string> given;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::pair<std::string, std::string> kv;
    try {
      kv = split_key_value(t);
    } catch (const std::exception& e) {
      throw std::runtime_error(std::string(e.what()) + " (line " + std::to_string(line_no) + ")");
    }
    if (!detail::known_keys().count(kv.first))
      throw std::runtime_error("config: unknown key '" + kv.first + "' (line " +
                               std::to_string(line_no) + ")");
    detail::apply_key(cfg, kv.first, kv.second);
    given.insert(kv.first);
  }
  for (const std::string& entry : overrides) {
    auto kv = split_key_value(entry);
    if (!detail::known_keys().count(kv.first))
      throw std::runtime_error("config: unknown key '" + kv.first + "'");
    detail::apply_key(cfg, kv.first, kv.second);
    given.insert(kv.first);
  }
  std::vector<std::string> missing;
  for (const char* req : {"dataset", "budget", "strategy"})
    if (!given.count(req)) missing.push_back(req);
  if (!missing.empty()) {
    std::string msg = "config: missing required keys:";
    for (const std::string& k : missing) msg += " " + k;
    throw std::runtime_error(msg);
  }
  cfg.validate();
  return cfg;
}

}  // namespace incent
