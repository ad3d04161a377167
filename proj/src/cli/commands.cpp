#include "casevo/cli/commands.hpp"

#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

#include "casevo/core/errors.hpp"
#include "casevo/core/simulation.hpp"
#include "casevo/election/scenario.hpp"
#include "casevo/report/report.hpp"

namespace casevo {

namespace {

namespace fs = std::filesystem;

std::ofstream open_out(const fs::path& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write '" + path.string() + "'");
  return f;
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read '" + path.string() + "'");
  return f;
}

void close_checked(std::ofstream& f, const fs::path& path) {
  f.close();
  if (!f) throw IoError("error writing '" + path.string() + "'");
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const TypologyError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const MissingTemplateError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const MissingVarError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const TemplateSyntaxError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ParamError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const BackendError& e) {
    err << "backend error: " << e.what() << '\n';
    return kExitBackend;
  } catch (const MalformedLogError& e) {
    err << "malformed log: " << e.what() << '\n';
    return kExitIo;
  } catch (const EmptyLogError& e) {
    err << "empty log: " << e.what() << '\n';
    return kExitIo;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
}

void dump_graph(const SocialGraph& graph, const fs::path& dir, int round) {
  const auto path = dir / ("round_" + std::to_string(round) + ".edges");
  auto f = open_out(path);
  write_edge_list(graph, f);
  close_checked(f, path);
}

}  // namespace

int cmd_run(const RunArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto config = SimConfig::load(args.config);
    if (args.seed) config.seed = *args.seed;
    if (args.workers) config.workers = *args.workers;
    config.log_path = args.out / "events.jsonl";
    config.validate();

    fs::create_directories(args.out);
    const auto registry = builtin_scenarios();
    auto scenario = registry.create(config);
    auto* election = dynamic_cast<ElectionScenario*>(scenario.get());

    Simulation sim(config, std::move(scenario));
    if (args.dump_graph && election != nullptr) {
      fs::create_directories(args.out / "graph");
      sim.on_round_end([&](const RoundSummary& s) { dump_graph(election->graph(), args.out / "graph", s.ts); });
    }

    const auto started = std::chrono::steady_clock::now();
    const auto result = sim.run();
    const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - started;

    if (election != nullptr) {
      const auto tallies_path = args.out / "tallies.csv";
      auto tf = open_out(tallies_path);
      write_tallies_csv(election->tallies(), tf);
      close_checked(tf, tallies_path);

      const auto& c = election->settings().candidates;
      auto log = open_in(result.log_path);
      const auto rows = word_frequencies(log, {c.first, c.second}, default_stopwords());
      const auto wf_path = args.out / "opinions_wordfreq.csv";
      auto wf = open_out(wf_path);
      write_wordfreq_csv(rows, wf);
      close_checked(wf, wf_path);

      if (args.dump_memory) {
        fs::create_directories(args.out / "memory");
        for (const auto& store : election->memories()) {
          const auto path = args.out / "memory" / (store.owner() + ".jsonl");
          auto mf = open_out(path);
          for (const auto& item : store.long_term()) mf << to_json(item).dump() << '\n';
          close_checked(mf, path);
        }
      }
    }

    if (args.metrics) {
      auto m = to_json(result.metrics);
      m["run_wall_seconds"] = wall.count();
      const auto path = args.out / "metrics.json";
      auto mf = open_out(path);
      mf << m.dump(2) << '\n';
      close_checked(mf, path);
      out << m.dump(2) << '\n';
    }

    for (const auto& r : result.rounds) out << "round " << r.ts << ": " << r.summary.dump() << '\n';
    out << "log: " << result.log_path.string() << '\n';
    return static_cast<int>(kExitOk);
  });
}

int cmd_report(const ReportArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    for (const auto& k : args.kinds) {
      if (k != "tally" && k != "wordfreq") throw ConfigError("unknown report kind '" + k + "'");
    }
    if (args.kinds.empty()) throw ConfigError("no report kinds given");
    if (!fs::exists(args.log)) throw IoError("log '" + args.log.string() + "' does not exist");
    const auto stopwords = args.stopwords ? load_stopwords(*args.stopwords) : default_stopwords();
    if (args.out) fs::create_directories(*args.out);

    const auto emit = [&](const std::string& file, const auto& write) {
      if (!args.out) {
        write(out);
        return;
      }
      const auto path = *args.out / file;
      auto f = open_out(path);
      write(f);
      close_checked(f, path);
    };

    for (const auto& kind : args.kinds) {
      auto log = open_in(args.log);
      if (kind == "tally") {
        const auto tallies = recompute_tallies(log, args.candidates, args.theta);
        emit("tallies.csv", [&](std::ostream& o) { write_tallies_csv(tallies, o); });
      } else {
        const auto rows = word_frequencies(log, {args.candidates.first, args.candidates.second}, stopwords);
        emit("opinions_wordfreq.csv", [&](std::ostream& o) { write_wordfreq_csv(rows, o); });
      }
    }
    return static_cast<int>(kExitOk);
  });
}

}  // namespace casevo
