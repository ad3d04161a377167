#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "casevo/election/vote.hpp"

namespace casevo {

// Process exit codes shared by every command.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitBackend = 2,
  kExitIo = 3,
  kExitInternal = 4,
};

struct RunArgs {
  std::filesystem::path config;
  std::filesystem::path out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  bool metrics = false;
  bool dump_graph = false;
  bool dump_memory = false;
};

// Writes <out>/events.jsonl, tallies.csv and opinions_wordfreq.csv, plus
// metrics.json, graph/round_<r>.edges and memory/<agent>.jsonl when asked.
int cmd_run(const RunArgs& args, std::ostream& out, std::ostream& err);

struct ReportArgs {
  std::filesystem::path log;
  std::vector<std::string> kinds{"tally", "wordfreq"};
  std::optional<std::filesystem::path> stopwords;
  // Directory for tallies.csv / opinions_wordfreq.csv; stdout when empty.
  std::optional<std::filesystem::path> out;
  double theta = kDefaultNeutralThreshold;
  CandidatePair candidates;
};

int cmd_report(const ReportArgs& args, std::ostream& out, std::ostream& err);

}  // namespace casevo
