#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "scid/ast.hpp"
#include "scid/cfg.hpp"
#include "scid/paths.hpp"
#include "scid/runs.hpp"

namespace py = pybind11;
using namespace scid;

namespace {

std::string with_log(const std::string& audit_log, auto&& run) {
  if (audit_log.empty()) return run(nullptr).to_json().dump();
  framework::AuditLog log(audit_log);
  return run(&log).to_json().dump();
}

}  // namespace

PYBIND11_MODULE(_scid, m) {
  m.doc() = "Native drivers; each returns the run report as JSON text.";

  m.def(
      "gametime",
      [](const std::string& program, const std::string& platform, const std::string& tau, double delta,
         std::uint64_t seed, double trial_factor, bool round_robin, const std::string& audit_log) {
        runs::GametimeConfig c;
        c.program = program;
        c.platform = platform;
        c.tau = tau;
        c.delta = delta;
        c.seed = seed;
        c.trial_factor = trial_factor;
        c.round_robin = round_robin;
        py::gil_scoped_release release;
        return with_log(audit_log, [&](framework::AuditLog* log) { return runs::run_gametime(c, log).report; });
      },
      py::arg("program"), py::arg("platform"), py::arg("tau") = "inf", py::arg("delta") = 0.05, py::arg("seed") = 0,
      py::arg("trial_factor") = 20.0, py::arg("round_robin") = false, py::arg("audit_log") = "");

  m.def(
      "synth",
      [](const std::string& library, const std::string& oracle, std::uint64_t seed, std::size_t max_iters,
         const std::string& audit_log) {
        runs::SynthConfig c;
        c.library = library;
        c.oracle = oracle;
        c.seed = seed;
        c.max_iters = max_iters;
        py::gil_scoped_release release;
        return with_log(audit_log, [&](framework::AuditLog* log) { return runs::run_synth(c, log).report; });
      },
      py::arg("library"), py::arg("oracle"), py::arg("seed") = 0, py::arg("max_iters") = 64,
      py::arg("audit_log") = "");

  m.def(
      "switch",
      [](const std::string& mds, double grid, double dwell, double step, double horizon, double replay_horizon,
         const std::string& audit_log) {
        runs::SwitchConfig c{mds, grid, dwell, step, horizon, replay_horizon};
        py::gil_scoped_release release;
        return with_log(audit_log, [&](framework::AuditLog* log) { return runs::run_switch(c, log).report; });
      },
      py::arg("mds") = "transmission", py::arg("grid") = 0.01, py::arg("dwell") = 0.0, py::arg("step") = 0.01,
      py::arg("horizon") = 200.0, py::arg("replay_horizon") = 400.0, py::arg("audit_log") = "");

  // Path statistics of a source text: (nodes, edges, paths, basis size).
  m.def("path_summary", [](const std::string& source) {
    const auto cfg = frontend::build_dag(frontend::parse(source));
    std::size_t basis = 0;
    {
      py::gil_scoped_release release;
      basis = paths::extract_feasible_basis(cfg).size();
    }
    return py::make_tuple(cfg.num_nodes(), cfg.num_edges(), cfg.path_count(), basis);
  });

  m.def("interpret", [](const std::string& source, const std::vector<std::uint64_t>& inputs) {
    return frontend::interpret(frontend::parse(source), inputs);
  });

  py::register_exception<frontend::SyntaxError>(m, "SyntaxError", PyExc_ValueError);
}
