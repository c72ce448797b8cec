#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "scid/ast.hpp"
#include "scid/paths.hpp"
#include "scid/report.hpp"
#include "scid/runs.hpp"

using namespace scid;

namespace {

struct Common {
  bool json = false;
  std::string report_path;
  std::string audit_log;
  bool wall_clock = false;
};

void add_common(CLI::App* app, Common& c) {
  app->add_flag("--json", c.json, "Print the run report as JSON");
  app->add_option("--report", c.report_path, "Write the run report JSON to a file");
  app->add_option("--audit-log", c.audit_log, "Append the audit record to a JSONL log");
  app->add_flag("--wall-clock", c.wall_clock, "Include wall-clock time in the report");
}

template <class F>
void write_to(const std::string& path, F&& fill) {
  if (path.empty()) return;
  std::ostringstream os;
  fill(os);
  report::write_file(path, os.str());
}

void finish(report::RunReport& r, const Common& c, double seconds, const std::string& text) {
  if (c.wall_clock) r.wall_clock_seconds = seconds;
  const std::string js = r.to_json().dump(2) + "\n";
  if (!c.report_path.empty()) report::write_file(c.report_path, js);
  if (c.json) std::cout << js;
  else std::cout << text;
  std::cerr << "wall clock: " << seconds << " s\n";
}

std::optional<framework::AuditLog> open_log(const Common& c) {
  if (c.audit_log.empty()) return std::nullopt;
  return std::make_optional<framework::AuditLog>(c.audit_log);
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scid: basis-path timing analysis, oracle-guided synthesis and switching-logic synthesis"};
  app.require_subcommand(1);

  Common gt_common, sy_common, sw_common;

  runs::GametimeConfig gt;
  std::string gt_csv, gt_trials_csv, gt_svg, gt_dump_cfg, gt_dump_basis, gt_dump_cnf;
  auto* gta = app.add_subcommand("gametime", "Answer <TA>: is the execution time always at most tau?");
  gta->add_option("--program", gt.program, "Program (.mc)")->required();
  gta->add_option("--platform", gt.platform, "Platform model JSON")->required();
  gta->add_option("--tau", gt.tau, "Time bound (rational or inf)");
  gta->add_option("--delta", gt.delta, "Failure probability")->check(CLI::Range(1e-12, 1.0 - 1e-12));
  gta->add_option("--seed", gt.seed, "Random seed");
  gta->add_option("--trial-factor", gt.trial_factor, "Trials = ceil(factor * b * ln(1/delta))")
      ->check(CLI::PositiveNumber);
  gta->add_flag("--round-robin", gt.round_robin, "Cycle through basis paths instead of sampling them");
  gta->add_option("--csv", gt_csv, "Write (path, predicted, actual) CSV");
  gta->add_option("--trials-csv", gt_trials_csv, "Write the measurement log CSV");
  gta->add_option("--svg", gt_svg, "Write a histogram SVG");
  gta->add_option("--dump-cfg", gt_dump_cfg, "Write the DAG as DOT");
  gta->add_option("--dump-basis", gt_dump_basis, "Write the basis as CSV");
  gta->add_option("--dump-cnf", gt_dump_cnf, "Write the worst path's feasibility formula as DIMACS");
  add_common(gta, gt_common);

  runs::SynthConfig sy;
  auto* sya = app.add_subcommand("synth", "Oracle-guided synthesis of a loop-free program");
  sya->add_option("--library", sy.library, "Component library JSON")->required();
  sya->add_option("--oracle", sy.oracle, "Oracle: a .mc program or builtin:NAME")->required();
  sya->add_option("--seed", sy.seed, "Random seed");
  sya->add_option("--max-iters", sy.max_iters, "Iteration budget")->check(CLI::PositiveNumber);
  add_common(sya, sy_common);

  runs::SwitchConfig sw;
  std::string sw_guards_csv, sw_trace_csv, sw_svg;
  auto* swa = app.add_subcommand("switch", "Synthesize hyperbox switching guards");
  swa->add_option("--mds", sw.mds, "transmission or a model JSON");
  swa->add_option("--grid", sw.grid, "Grid step")->check(CLI::PositiveNumber);
  swa->add_option("--dwell", sw.dwell, "Minimum time in each mode")->check(CLI::NonNegativeNumber);
  swa->add_option("--step", sw.step, "Integration step")->check(CLI::PositiveNumber);
  swa->add_option("--horizon", sw.horizon, "Simulation horizon per query")->check(CLI::PositiveNumber);
  swa->add_option("--replay-horizon", sw.replay_horizon, "Closed-loop replay horizon")->check(CLI::PositiveNumber);
  swa->add_option("--guards-csv", sw_guards_csv, "Write the guard table as CSV");
  swa->add_option("--trace-csv", sw_trace_csv, "Write the closed-loop trace as CSV");
  swa->add_option("--svg", sw_svg, "Write the closed-loop trace as SVG");
  add_common(swa, sw_common);

  std::string audit_file;
  bool audit_json = false;
  auto* aua = app.add_subcommand("audit", "Check and list an audit log");
  aua->add_option("log", audit_file, "JSONL audit log")->required();
  aua->add_flag("--json", audit_json, "Print records as JSON lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    const auto t0 = std::chrono::steady_clock::now();
    if (*gta) {
      auto log = open_log(gt_common);
      gt.distribution = !gt_csv.empty() || !gt_svg.empty();
      auto run = runs::run_gametime(gt, log ? &*log : nullptr);
      write_to(gt_csv, [&](std::ostream& os) { report::write_path_csv(os, run.distribution); });
      write_to(gt_trials_csv, [&](std::ostream& os) { report::write_trials_csv(os, run.verdict.log); });
      write_to(gt_svg, [&](std::ostream& os) { os << report::histogram_svg(run.distribution); });
      write_to(gt_dump_cfg, [&](std::ostream& os) { os << run.cfg.to_dot(); });
      write_to(gt_dump_basis, [&](std::ostream& os) {
        os << "path";
        for (std::size_t e = 0; e < run.cfg.num_edges(); ++e) os << ",e" << e;
        for (const auto& in : run.cfg.inputs) os << "," << in;
        os << "\n";
        for (std::size_t i = 0; i < run.verdict.basis.size(); ++i) {
          os << i;
          for (auto b : run.verdict.basis.paths[i].bits) os << "," << int(b);
          for (auto v : run.verdict.basis.tests[i]) os << "," << v;
          os << "\n";
        }
      });
      write_to(gt_dump_cnf,
               [&](std::ostream& os) { bv::write_dimacs(paths::path_to_formula(run.cfg, run.verdict.worst_path), os); });
      const auto& r = run.report.result;
      std::ostringstream text;
      text << r["answer"].get<std::string>() << " tau=" << (r["tau"].is_null() ? "inf" : r["tau"].get<std::string>())
           << " tau*=" << r["tau_star"].get<std::string>() << " predicted=" << r["predicted_worst"].get<std::string>()
           << " basis=" << run.verdict.basis.size() << " trials=" << run.verdict.n_trials << "\n";
      if (run.verdict.witness_test) {
        text << "witness:";
        for (std::size_t i = 0; i < run.cfg.inputs.size(); ++i)
          text << " " << run.cfg.inputs[i] << "=" << (*run.verdict.witness_test)[i];
        text << "\n";
      }
      finish(run.report, gt_common, since(t0), text.str());
      return 0;
    }
    if (*sya) {
      auto log = open_log(sy_common);
      auto run = runs::run_synth(sy, log ? &*log : nullptr);
      std::ostringstream text;
      text << run.report.result["status"].get<std::string>() << " iterations=" << run.result.iterations << "\n";
      if (run.result.program)
        text << run.source << "equivalence: " << run.report.result["equivalence"].get<std::string>() << "\n";
      finish(run.report, sy_common, since(t0), text.str());
      return 0;
    }
    if (*swa) {
      auto log = open_log(sw_common);
      auto run = runs::run_switch(sw, log ? &*log : nullptr);
      write_to(sw_guards_csv, [&](std::ostream& os) {
        report::write_guard_csv(os, run.mds, run.result.guards, sw.grid, run.reference);
      });
      if (run.replay) {
        write_to(sw_trace_csv, [&](std::ostream& os) { report::write_trace_csv(os, run.mds, run.replay->samples); });
        write_to(sw_svg, [&](std::ostream& os) { os << report::trace_svg(run.mds, *run.replay); });
      }
      std::ostringstream text;
      text << run.report.result["status"].get<std::string>() << " " << run.result.message << "\n";
      text << report::guard_table(run.mds, run.result.guards, sw.grid, run.reference);
      if (run.replay) {
        const auto& v = run.replay->verdict;
        text << "replay: safe=" << (v.safe ? "yes" : "no") << " goal=" << (v.goal_reached ? "yes" : "no")
             << " t=" << v.final_time << " mode=" << run.mds.modes[v.final_mode].name;
        for (std::size_t d = 0; d < run.mds.vars.size(); ++d)
          text << " " << run.mds.vars[d].name << "=" << v.final_state[d];
        text << "\n";
      }
      finish(run.report, sw_common, since(t0), text.str());
      return 0;
    }
    if (*aua) {
      std::ifstream in(audit_file);
      if (!in) throw std::invalid_argument("cannot open " + audit_file);
      const auto records = framework::read_audit_log(in);
      for (const auto& r : records) {
        if (audit_json) {
          std::cout << framework::to_json(r).dump() << "\n";
          continue;
        }
        std::cout << framework::to_string(r.validity_status) << " " << framework::to_string(r.run_outcome)
                  << (r.waiver ? " (waived)" : "") << "  " << r.hypothesis << (r.note.empty() ? "" : "  " + r.note)
                  << "\n";
      }
      if (!audit_json) std::cout << records.size() << " record(s), all consistent\n";
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const frontend::SyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
