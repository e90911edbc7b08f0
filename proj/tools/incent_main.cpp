// Command-line front end: run experiments from flat key-value configs, batch
// them in parallel, render Table-style reports, and sanity-check datasets.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "incent/config.hpp"
#include "incent/engine.hpp"
#include "incent/report.hpp"

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::string default_out_dir() {
  const char* env = std::getenv("INCENT_OUT");
  return env != nullptr && *env != '\0' ? env : ".";
}

incent::ExperimentConfig load_config(const std::string& path,
                                     const std::vector<std::string>& overrides) {
  incent::ExperimentConfig cfg = incent::parse_config(read_file(path), overrides);
  if (cfg.name.empty()) cfg.name = fs::path(path).stem().string();
  return cfg;
}

void emit_run(const incent::SimulationTrace& trace, const fs::path& out_dir) {
  const std::string& name =
      trace.config.name.empty() ? trace.config.strategy : trace.config.name;
  write_file(out_dir / (name + "_trace.csv"), incent::trace_to_csv(trace));
  write_file(out_dir / (name + "_summary.csv"), incent::summaries_to_csv({trace.summary}));
  if (!trace.churn_outline.empty())
    write_file(out_dir / (name + "_churn.log"), trace.churn_outline);
}

int cmd_run(const std::string& config_path, const std::vector<std::string>& overrides,
            const std::string& out_dir) {
  incent::ExperimentConfig cfg = load_config(config_path, overrides);
  incent::SimulationTrace trace = incent::run(cfg);
  emit_run(trace, out_dir);
  std::cout << cfg.name << " (" << cfg.strategy
            << "): mean_gaup=" << incent::fmt_double(trace.summary.mean_gaup)
            << " mean_giac=" << incent::fmt_double(trace.summary.mean_giac)
            << " spend=" << incent::fmt_double(trace.summary.total_spend) << "/"
            << incent::fmt_double(trace.summary.total_budget)
            << " elapsed=" << incent::fmt_double(trace.elapsed_seconds) << "s\n";
  return 0;
}

int cmd_matrix(const std::string& config_dir, int jobs, const std::string& out_dir) {
  std::vector<std::string> paths;
  for (const auto& entry : fs::directory_iterator(config_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".cfg")
      paths.push_back(entry.path().string());
  std::sort(paths.begin(), paths.end());
  if (paths.empty()) throw std::runtime_error("no .cfg files in " + config_dir);

  std::vector<incent::ExperimentConfig> cfgs;
  for (const std::string& p : paths) cfgs.push_back(load_config(p, {}));

  auto outcomes = incent::run_matrix(cfgs, jobs);
  std::vector<incent::RunSummary> rows;
  int failures = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (!outcomes[i].trace) {
      std::cerr << cfgs[i].name << ": FAILED: " << outcomes[i].error << "\n";
      ++failures;
      continue;
    }
    emit_run(*outcomes[i].trace, out_dir);
    rows.push_back(outcomes[i].trace->summary);
  }
  if (!rows.empty()) {
    bool have_baseline = false;
    for (const auto& s : rows) have_baseline = have_baseline || s.strategy == "none";
    incent::Report report = incent::make_report(rows, /*want_returns=*/have_baseline);
    write_file(fs::path(out_dir) / "summary.csv", report.csv);
    std::cout << report.text;
  }
  return failures == 0 ? 0 : 1;
}

int cmd_report(const std::string& in_dir, bool want_returns, const std::string& out_dir) {
  // per-run summaries preferred; the aggregate summary.csv is a fallback
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(in_dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string fname = entry.path().filename().string();
    if (fname.size() > 12 && fname.compare(fname.size() - 12, 12, "_summary.csv") == 0)
      files.push_back(entry.path().string());
  }
  if (files.empty() && fs::exists(fs::path(in_dir) / "summary.csv"))
    files.push_back((fs::path(in_dir) / "summary.csv").string());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw std::runtime_error("no summary CSVs in " + in_dir);
  std::vector<incent::RunSummary> rows;
  for (const std::string& f : files)
    for (incent::RunSummary& s : incent::summaries_from_csv(read_file(f)))
      rows.push_back(std::move(s));
  incent::Report report = incent::make_report(rows, want_returns);
  std::cout << report.text;
  write_file(fs::path(out_dir) / "report.txt", report.text);
  write_file(fs::path(out_dir) / "report.csv", report.csv);
  return 0;
}

int cmd_validate(const std::string& dataset, bool undirected, std::int64_t expect_nodes,
                 std::int64_t expect_edges) {
  incent::SocialNetwork g = incent::load_edge_list(read_file(dataset), undirected);
  double avg_out = g.user_count() > 0
                       ? static_cast<double>(g.edge_count()) / static_cast<double>(g.user_count())
                       : 0.0;
  std::cout << "users=" << g.user_count() << " edges=" << g.edge_count()
            << " avg_out_degree=" << incent::fmt_double(avg_out) << "\n";
  bool ok = true;
  if (expect_nodes >= 0 && static_cast<std::int64_t>(g.user_count()) != expect_nodes) {
    std::cerr << "node count mismatch: expected " << expect_nodes << ", got " << g.user_count()
              << "\n";
    ok = false;
  }
  if (expect_edges >= 0 && static_cast<std::int64_t>(g.edge_count()) != expect_edges) {
    std::cerr << "edge count mismatch: expected " << expect_edges << ", got " << g.edge_count()
              << "\n";
    ok = false;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Budget-constrained incentive allocation on hidden-topology social networks"};
  app.require_subcommand(1);

  std::string config_path, out_dir = default_out_dir();
  std::vector<std::string> overrides;
  auto* run_cmd = app.add_subcommand("run", "Run one experiment config");
  run_cmd->add_option("--config", config_path, "config file")->required();
  run_cmd->add_option("--set", overrides, "override key=value");
  run_cmd->add_option("--out", out_dir, "output directory");

  std::string config_dir, matrix_out = default_out_dir();
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  auto* matrix_cmd = app.add_subcommand("matrix", "Run every .cfg in a directory");
  matrix_cmd->add_option("--configs", config_dir, "config directory")->required();
  matrix_cmd->add_option("--jobs", jobs, "parallel runs");
  matrix_cmd->add_option("--out", matrix_out, "output directory");

  std::string report_in, report_out;
  bool want_returns = false;
  auto* report_cmd = app.add_subcommand("report", "Render a summary table from emitted CSVs");
  report_cmd->add_option("--in", report_in, "directory of summary CSVs")->required();
  report_cmd->add_option("--out", report_out, "output directory (defaults to --in)");
  report_cmd->add_flag("--returns", want_returns, "require return-rate columns");

  std::string dataset;
  bool undirected = false;
  std::int64_t expect_nodes = -1, expect_edges = -1;
  auto* validate_cmd = app.add_subcommand("validate", "Ingest a dataset and report stats");
  validate_cmd->add_option("--dataset", dataset, "edge list file")->required();
  validate_cmd->add_flag("--undirected", undirected, "expand each pair to both directions");
  validate_cmd->add_option("--expect-nodes", expect_nodes, "expected user count");
  validate_cmd->add_option("--expect-edges", expect_edges, "expected edge count");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return cmd_run(config_path, overrides, out_dir);
    if (matrix_cmd->parsed()) return cmd_matrix(config_dir, jobs < 1 ? 1 : jobs, matrix_out);
    if (report_cmd->parsed())
      return cmd_report(report_in, want_returns, report_out.empty() ? report_in : report_out);
    if (validate_cmd->parsed())
      return cmd_validate(dataset, undirected, expect_nodes, expect_edges);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
