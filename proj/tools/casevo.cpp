#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "casevo/cli/commands.hpp"

namespace {

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, ',')) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"casevo: LLM-driven multi-agent social simulation"};
  app.require_subcommand(1);

  casevo::RunArgs run;
  std::uint64_t seed = 0;
  std::size_t workers = 0;
  auto* run_cmd = app.add_subcommand("run", "Run a simulation from a config file");
  run_cmd->add_option("--config", run.config, "Config file (JSON)")->required();
  run_cmd->add_option("--out", run.out, "Output directory")->required();
  auto* seed_opt = run_cmd->add_option("--seed", seed, "Override the config seed");
  auto* workers_opt = run_cmd->add_option("--workers", workers, "Override the worker count")->check(CLI::PositiveNumber);
  run_cmd->add_flag("--metrics", run.metrics, "Print and write execution metrics");
  run_cmd->add_flag("--dump-graph", run.dump_graph, "Write the edge list after every round");
  run_cmd->add_flag("--dump-memory", run.dump_memory, "Write every agent's memory at the end");

  casevo::ReportArgs report;
  std::string kinds = "tally,wordfreq";
  std::string candidates;
  std::string stopwords;
  std::string report_out;
  auto* report_cmd = app.add_subcommand("report", "Recompute reports from an event log");
  report_cmd->add_option("--log", report.log, "events.jsonl to read")->required();
  report_cmd->add_option("--kinds", kinds, "Comma-separated subset of tally,wordfreq")->capture_default_str();
  auto* stop_opt = report_cmd->add_option("--stopwords", stopwords, "Stopword list, one word per line");
  auto* rout_opt = report_cmd->add_option("--out", report_out, "Write CSV files here instead of stdout");
  report_cmd->add_option("--theta", report.theta, "Neutral threshold")->capture_default_str();
  auto* cand_opt = report_cmd->add_option("--candidates", candidates, "first,second candidate names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? casevo::kExitOk : casevo::kExitConfig;
  }

  if (*run_cmd) {
    if (*seed_opt) run.seed = seed;
    if (*workers_opt) run.workers = workers;
    return casevo::cmd_run(run, std::cout, std::cerr);
  }

  report.kinds = split_csv(kinds);
  if (*stop_opt) report.stopwords = stopwords;
  if (*rout_opt) report.out = report_out;
  if (*cand_opt) {
    const auto names = split_csv(candidates);
    if (names.size() != 2) {
      std::cerr << "--candidates needs exactly two names\n";
      return casevo::kExitConfig;
    }
    report.candidates = {names[0], names[1]};
  }
  return casevo::cmd_report(report, std::cout, std::cerr);
}
