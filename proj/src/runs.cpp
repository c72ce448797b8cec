#include "scid/runs.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "scid/random.hpp"

namespace scid::runs {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string rat(const Rational& r) { return to_string(r); }

json edges_json(const paths::PathVector& p) { return p.edges(); }

framework::AuditRecord audit_into(framework::AuditLog* log, const framework::StructureHypothesisDescriptor& h,
                                  framework::ValidityStatus status, framework::RunOutcome outcome, bool waiver,
                                  std::string note) {
  framework::AuditLog local;
  return framework::record_audit(log ? *log : local, h, status, outcome, waiver, std::move(note));
}

std::string params(std::initializer_list<std::pair<const char*, std::string>> kv) {
  std::string s;
  for (const auto& [k, v] : kv) s += std::string(k) + "=" + v + ";";
  return s;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

frontend::Program parse_program(const std::string& path, const std::string& text) {
  try {
    return frontend::parse(text);
  } catch (const frontend::SyntaxError& e) {
    throw std::invalid_argument(path + ":" + e.what());
  }
}

}  // namespace

std::string resolve_path(const std::string& name) {
  if (fs::exists(name)) return name;
  if (const char* env = std::getenv("SCID_BENCHMARKS")) {
    const fs::path p = fs::path(env) / name;
    if (fs::exists(p)) return p.string();
  }
#ifdef SCID_BENCHMARK_DIR
  const fs::path p = fs::path(SCID_BENCHMARK_DIR) / name;
  if (fs::exists(p)) return p.string();
#endif
  return name;
}

GametimeRun run_gametime(const GametimeConfig& c, framework::AuditLog* audit) {
  GametimeRun run;
  const std::string prog_path = resolve_path(c.program), plat_path = resolve_path(c.platform);
  const std::string prog_text = report::read_file(prog_path), plat_text = report::read_file(plat_path);
  run.cfg = frontend::build_dag(parse_program(prog_path, prog_text));
  run.platform = timing::parse_platform(plat_text, run.cfg);
  run.platform.seed = derive_seed(c.seed, "platform");
  std::optional<Rational> tau;
  if (c.tau != "inf") tau = parse_rational(c.tau);
  timing::TaOptions opt;
  opt.seed = c.seed;
  opt.trial_factor = c.trial_factor;
  opt.round_robin = c.round_robin;
  run.verdict = timing::answer_ta(run.cfg, run.platform, tau, c.delta, opt);
  if (c.distribution)
    run.distribution = timing::path_distribution(run.cfg, run.platform, run.verdict.basis, run.verdict.lengths);

  const auto& v = run.verdict;
  json basis = json::array();
  for (std::size_t i = 0; i < v.basis.size(); ++i)
    basis.push_back({{"edges", edges_json(v.basis.paths[i])}, {"test", v.basis.tests[i]}, {"length", rat(v.lengths[i])}});
  json result{{"answer", v.answer == timing::Answer::Yes ? "YES" : "NO"},
              {"tau", tau ? json(rat(*tau)) : json(nullptr)},
              {"tau_star", rat(v.tau_star)},
              {"predicted_worst", rat(v.predicted)},
              {"worst_path", edges_json(v.worst_path)},
              {"witness_test", v.witness_test ? json(*v.witness_test) : json(nullptr)},
              {"delta", c.delta},
              {"n_trials", v.n_trials},
              {"basis", basis},
              {"cfg",
               {{"nodes", run.cfg.num_nodes()},
                {"edges", run.cfg.num_edges()},
                {"paths", run.cfg.path_count()},
                {"cyclomatic_bound", run.cfg.cyclomatic_bound()}}},
              {"platform",
               {{"law", timing::law_name(run.platform.law)},
                {"mu_max", run.platform.mu_max},
                {"rho", run.platform.rho},
                {"noise", run.platform.noise}}}};
  if (c.distribution) result["feasible_paths"] = run.distribution.size();

  framework::StructureHypothesisDescriptor h;
  h.name = "weight-perturbation platform model with basis-path predictor";
  run.report.subcommand = "gametime";
  run.report.seed = c.seed;
  run.report.inputs_digest =
      report::digest({prog_text, plat_text,
                      params({{"tau", c.tau}, {"delta", num(c.delta)}, {"seed", std::to_string(c.seed)},
                              {"trial_factor", num(c.trial_factor)}, {"round_robin", c.round_robin ? "1" : "0"}})});
  run.report.result = std::move(result);
  run.report.audit = audit_into(audit, h, framework::ValidityStatus::Assumed, framework::RunOutcome::SoundResult, true,
                                "answer holds with probability at least 1 - delta if the platform follows the "
                                "weight-perturbation model");
  return run;
}

SynthRun run_synth(const SynthConfig& c, framework::AuditLog* audit) {
  SynthRun run;
  const std::string lib_path = resolve_path(c.library);
  const std::string lib_text = report::read_file(lib_path);
  run.library = synth::parse_library(lib_text);

  synth::Oracle oracle;
  std::string oracle_key;
  std::string name = c.oracle;
  const bool prefixed = name.rfind("builtin:", 0) == 0;
  if (prefixed) name = name.substr(8);
  const auto builtins = synth::builtin_oracle_names();
  const std::string oracle_path = resolve_path(c.oracle);
  if (!prefixed && fs::exists(oracle_path)) {
    oracle_key = report::read_file(oracle_path);
    oracle = synth::oracle_from_program(parse_program(oracle_path, oracle_key));
  } else if (std::find(builtins.begin(), builtins.end(), name) != builtins.end()) {
    oracle = synth::builtin_oracle(name, run.library.width);
    oracle_key = "builtin:" + name;
  } else {
    throw std::invalid_argument("unknown oracle '" + c.oracle + "' (not a file or builtin)");
  }
  if (oracle.width != run.library.width || oracle.inputs != run.library.inputs ||
      oracle.outputs != run.library.outputs)
    throw std::invalid_argument("oracle shape (inputs, outputs, width) does not match the library");

  synth::OgisOptions opt;
  opt.max_iters = c.max_iters;
  run.result = synth::ogis_loop(run.library, oracle, c.seed, opt);
  if (run.result.program) {
    run.equivalence = synth::verify_equivalence(run.library, *run.result.program, oracle);
    run.source = synth::to_source(run.library, *run.result.program);
  }

  json queries = json::array();
  for (const auto& q : run.result.queries) queries.push_back({{"inputs", q.inputs}, {"outputs", q.outputs}});
  json result{{"status", synth::status_name(run.result.status)},
              {"iterations", run.result.iterations},
              {"queries", queries},
              {"library", run.library.describe()},
              {"oracle", oracle.name}};
  if (run.result.program) {
    result["program"] = run.source;
    result["lines"] = run.result.program->lines.size();
    result["equivalence"] = synth::status_name(run.equivalence->status);
    if (run.equivalence->counterexample) result["counterexample"] = *run.equivalence->counterexample;
  }

  using framework::RunOutcome;
  using framework::ValidityStatus;
  ValidityStatus status = ValidityStatus::Assumed;
  RunOutcome outcome = RunOutcome::Unknown;
  std::string note;
  if (run.result.status == synth::SynthStatus::Unrealizable) {
    outcome = RunOutcome::Unrealizable;
    note = "no program over the library is consistent with the oracle's answers";
  } else if (run.equivalence && run.equivalence->status == synth::EquivalenceStatus::Equivalent) {
    status = ValidityStatus::CheckedByEnumeration;
    outcome = RunOutcome::SoundResult;
    note = "synthesized program checked equivalent to the oracle";
  } else if (run.equivalence && run.equivalence->status == synth::EquivalenceStatus::Counterexample) {
    note = "synthesized program disagrees with the oracle: the library hypothesis is invalid";
  } else {
    note = run.result.program ? "equivalence could not be checked" : "iteration budget exhausted";
  }
  run.report.subcommand = "synth";
  run.report.seed = c.seed;
  run.report.inputs_digest = report::digest(
      {lib_text, oracle_key, params({{"seed", std::to_string(c.seed)}, {"max_iters", std::to_string(c.max_iters)}})});
  run.report.result = std::move(result);
  run.report.audit = audit_into(audit, synth::components_hypothesis(run.library), status, outcome, false, note);
  return run;
}

SwitchRun run_switch(const SwitchConfig& c, framework::AuditLog* audit) {
  SwitchRun run;
  run.mds = c.mds == "transmission" ? hybrid::transmission() : hybrid::load_mds(resolve_path(c.mds));
  run.sim = hybrid::SimConfig{c.step, c.horizon, c.dwell, c.grid};
  run.sim.validate();
  const bool builtin = c.mds == "transmission";
  if (builtin) run.reference = hybrid::transmission_reference(c.dwell > 0);

  run.result = hybrid::synthesize_switching(run.mds, hybrid::initial_guards(run.mds, c.grid), run.sim);
  if (run.result.success) {
    const auto policy = builtin ? hybrid::transmission_policy(run.mds)
                                : hybrid::first_enabled_policy(run.mds, run.result.guards, c.grid);
    const auto goal = builtin ? hybrid::transmission_goal(run.mds) : hybrid::Goal{};
    hybrid::ClosedLoopOptions clo;
    clo.horizon = c.replay_horizon;
    run.replay = hybrid::closed_loop_simulate(run.mds, run.result.guards, run.mds.initial_mode,
                                              run.mds.initial_state, policy, goal, run.sim, clo);
  }

  json guards = json::array();
  for (std::size_t i = 0; i < run.mds.transitions.size(); ++i) {
    const auto& t = run.mds.transitions[i];
    const auto& g = run.result.guards[i];
    json jg{{"name", t.name},
            {"from", run.mds.modes[t.from].name},
            {"to", run.mds.modes[t.to].name},
            {"guard", g.to_string(run.mds.vars, c.grid)},
            {"empty", g.empty}};
    json box = json::object();
    for (std::size_t d = 0; d < g.dims.size(); ++d)
      if (g.dims[d] && !g.empty)
        box[run.mds.vars[d].name] = {static_cast<double>(g.dims[d]->lo) * c.grid,
                                     static_cast<double>(g.dims[d]->hi) * c.grid};
    jg["box"] = box;
    if (auto ref = run.reference.find(t.name); ref != run.reference.end()) {
      jg["reference"] = {ref->second.lo, ref->second.hi};
      const auto dev = report::endpoint_deviation(run.mds, run.result.guards, c.grid, t.name, ref->second);
      jg["deviation"] = dev ? json(*dev) : json(nullptr);
    }
    guards.push_back(jg);
  }
  json result{{"status", run.result.success ? "SUCCESS" : "FAILURE"},
              {"message", run.result.message},
              {"passes", run.result.passes.size()},
              {"labels", run.result.labels},
              {"non_monotone", run.result.non_monotone},
              {"guards", guards}};
  if (run.replay) {
    const auto& vd = run.replay->verdict;
    result["replay"] = {{"safe", vd.safe},
                        {"goal_reached", vd.goal_reached},
                        {"stuck", vd.stuck},
                        {"final_time", vd.final_time},
                        {"final_mode", run.mds.modes[vd.final_mode].name},
                        {"final_state", vd.final_state},
                        {"switches", run.replay->events.size()}};
  }

  using framework::RunOutcome;
  using framework::ValidityStatus;
  RunOutcome outcome = RunOutcome::Unknown;
  bool waiver = false;
  std::string note;
  if (!run.result.success) {
    outcome = run.result.message.find("empty") != std::string::npos ? RunOutcome::Unrealizable : RunOutcome::Unknown;
    note = run.result.message;
  } else if (run.result.non_monotone) {
    note = "hypothesis invalid: non-monotone labels observed during hyperbox search";
  } else if (run.replay && !run.replay->verdict.safe) {
    note = "closed-loop replay violated the safety property";
  } else {
    outcome = RunOutcome::SoundResult;
    waiver = true;
    note = "hyperbox hypothesis and ideal simulator assumed; closed-loop replay safe";
  }
  framework::StructureHypothesisDescriptor h;
  h.name = "hyperbox guards on grid " + num(c.grid);
  run.report.subcommand = "switch";
  run.report.seed = 0;
  run.report.inputs_digest = report::digest(
      {hybrid::mds_to_json(run.mds), params({{"grid", num(c.grid)}, {"dwell", num(c.dwell)}, {"step", num(c.step)},
                                             {"horizon", num(c.horizon)}, {"replay_horizon", num(c.replay_horizon)}})});
  run.report.result = std::move(result);
  run.report.audit = audit_into(audit, h, ValidityStatus::Assumed, outcome, waiver, note);
  return run;
}

}  // namespace scid::runs
