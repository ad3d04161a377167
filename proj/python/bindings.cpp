#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <fstream>
#include <sstream>

#include "casevo/cli/commands.hpp"
#include "casevo/election/vote.hpp"
#include "casevo/network/social_graph.hpp"
#include "casevo/report/report.hpp"

namespace py = pybind11;
using namespace casevo;

namespace {

py::tuple run_cli(const RunArgs& args) {
  std::ostringstream out, err;
  int code;
  {
    py::gil_scoped_release release;
    code = cmd_run(args, out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "casevo simulation core";

  m.def(
      "run",
      [](const std::filesystem::path& config, const std::filesystem::path& out, std::optional<std::uint64_t> seed,
         std::optional<std::size_t> workers) {
        RunArgs args;
        args.config = config;
        args.out = out;
        args.seed = seed;
        args.workers = workers;
        return run_cli(args);
      },
      py::arg("config"), py::arg("out"), py::arg("seed") = py::none(), py::arg("workers") = py::none(),
      "Run a simulation; returns (exit_code, stdout, stderr).");

  m.def(
      "tallies",
      [](const std::filesystem::path& log, double theta) {
        std::ifstream in(log);
        if (!in) throw std::runtime_error("cannot open " + log.string());
        std::vector<std::tuple<int, std::size_t, std::size_t, std::size_t>> rows;
        for (const auto& t : recompute_tallies(in, {}, theta)) rows.emplace_back(t.round, t.first, t.second, t.neutral);
        return rows;
      },
      py::arg("log"), py::arg("theta") = kDefaultNeutralThreshold);

  m.def(
      "classify",
      [](double first, double second, double theta) {
        const CandidatePair c;
        return support_label(classify({{c.first, first}, {c.second, second}}, c, theta), c);
      },
      py::arg("trump"), py::arg("biden"), py::arg("theta") = kDefaultNeutralThreshold);

  m.def(
      "small_world_edges",
      [](std::size_t n, std::size_t k, double p, std::uint64_t seed) {
        std::vector<std::tuple<std::size_t, std::size_t>> out;
        for (const auto& e : generate_small_world(n, k, p, seed).edges()) out.emplace_back(e.u, e.v);
        return out;
      },
      py::arg("n"), py::arg("k"), py::arg("p"), py::arg("seed"));

  m.def("tokenize", [](const std::string& text) { return tokenize(text, default_stopwords()); }, py::arg("text"));
}
