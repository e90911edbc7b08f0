#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "incent/csv.hpp"
#include "incent/engine.hpp"
#include "incent/metrics.hpp"

namespace incent {

struct Report {
  std::string text;
  std::string csv;
  std::vector<RunSummary> rows;  // with return rates filled in
};

namespace detail {

inline bool is_baseline(const RunSummary& s) { return s.strategy == "none"; }

struct Cell {
  std::string value;
  bool best = false;
};

}  // namespace detail

// Budget-efficiency table: one row per strategy, eight columns, per-column
// best marked with '*' in the text table. Spend and utilization are best
// when lowest, the other metrics when highest; baseline cells that have no
// meaning show "/". Return rates need a no-incentive baseline row.
inline Report make_report(std::vector<RunSummary> rows, bool want_returns = true) {
  if (rows.empty()) throw std::invalid_argument("report: no summaries");
  const RunSummary* baseline = nullptr;
  for (const RunSummary& s : rows)
    if (detail::is_baseline(s)) baseline = &s;
  if (want_returns && baseline == nullptr)
    throw std::runtime_error("report: return rates need a no-incentive run");
  if (baseline != nullptr) {
    for (RunSummary& s : rows) {
      if (detail::is_baseline(s)) continue;
      if (auto rr = return_rates(s, *baseline)) {
        s.r_mu = rr->first;
        s.r_tau = rr->second;
      }
    }
  }

  const std::vector<std::string> headers = {"strategy", "total_budget", "spend",
                                            "mean_gaup", "mean_giac",    "utilization",
                                            "r_mu",      "r_tau"};
  std::vector<std::vector<detail::Cell>> grid;
  for (const RunSummary& s : rows) {
    bool base = detail::is_baseline(s);
    std::vector<detail::Cell> row(8);
    row[0].value = s.strategy;
    row[1].value = fmt_double(s.total_budget);
    row[2].value = base ? "/" : fmt_double(s.total_spend);
    row[3].value = fmt_double(s.mean_gaup);
    row[4].value = fmt_double(s.mean_giac);
    row[5].value = base ? "/" : fmt_double(s.utilization);
    row[6].value = s.r_mu ? fmt_double(*s.r_mu) : "/";
    row[7].value = s.r_tau ? fmt_double(*s.r_tau) : "/";
    grid.push_back(std::move(row));
  }

  // Column winners: lower is better for spend/utilization, higher elsewhere.
  auto mark_best = [&](std::size_t col, bool lower_wins, auto getter) {
    std::optional<double> best;
    for (const RunSummary& s : rows) {
      auto v = getter(s);
      if (!v) continue;
      if (!best || (lower_wins ? *v < *best : *v > *best)) best = *v;
    }
    if (!best) return;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      auto v = getter(rows[i]);
      if (v && *v == *best) grid[i][col].best = true;
    }
  };
  auto present = [](const RunSummary& s, double v) -> std::optional<double> {
    return detail::is_baseline(s) ? std::nullopt : std::optional<double>(v);
  };
  mark_best(2, true, [&](const RunSummary& s) { return present(s, s.total_spend); });
  mark_best(3, false, [](const RunSummary& s) { return std::optional<double>(s.mean_gaup); });
  mark_best(4, false, [](const RunSummary& s) { return std::optional<double>(s.mean_giac); });
  mark_best(5, true, [&](const RunSummary& s) { return present(s, s.utilization); });
  mark_best(6, false, [](const RunSummary& s) { return s.r_mu; });
  mark_best(7, false, [](const RunSummary& s) { return s.r_tau; });

  Report report;
  report.rows = rows;
  report.csv = summaries_to_csv(rows);

  std::vector<std::size_t> width(headers.size());
  for (std::size_t c = 0; c < headers.size(); ++c) {
    width[c] = headers[c].size();
    for (const auto& row : grid)
      width[c] = std::max(width[c], row[c].value.size() + (row[c].best ? 1 : 0));
  }
  std::ostringstream out;
  for (std::size_t c = 0; c < headers.size(); ++c) {
    out << (c ? "  " : "") << headers[c] << std::string(width[c] - headers[c].size(), ' ');
  }
  out << "\n";
  for (const auto& row : grid) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::string cell = row[c].value + (row[c].best ? "*" : "");
      out << (c ? "  " : "") << cell << std::string(width[c] - cell.size(), ' ');
    }
    out << "\n";
  }
  report.text = out.str();
  return report;
}

}  // namespace incent
