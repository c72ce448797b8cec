#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scid/cfg.hpp"
#include "scid/framework.hpp"
#include "scid/hybrid.hpp"
#include "scid/report.hpp"
#include "scid/synth.hpp"
#include "scid/timing.hpp"

namespace scid::runs {

/// As given when it exists, else looked up under $SCID_BENCHMARKS and the bundled benchmark directory.
std::string resolve_path(const std::string& name);

struct GametimeConfig {
  std::string program;
  std::string platform;
  /// Rational text, or "inf".
  std::string tau = "inf";
  double delta = 0.05;
  std::uint64_t seed = 0;
  double trial_factor = 20.0;
  bool round_robin = false;
  bool distribution = true;
};

struct GametimeRun {
  report::RunReport report;
  frontend::Cfg cfg;
  timing::PlatformModel platform;
  timing::TimingVerdict verdict;
  std::vector<timing::PathTiming> distribution;
};

GametimeRun run_gametime(const GametimeConfig& config, framework::AuditLog* audit = nullptr);

struct SynthConfig {
  std::string library;
  /// A .mc program or builtin:NAME.
  std::string oracle;
  std::uint64_t seed = 0;
  std::size_t max_iters = 64;
};

struct SynthRun {
  report::RunReport report;
  synth::ComponentLibrary library;
  synth::SynthesisResult result;
  std::optional<synth::EquivalenceResult> equivalence;
  std::string source;
};

SynthRun run_synth(const SynthConfig& config, framework::AuditLog* audit = nullptr);

struct SwitchConfig {
  /// "transmission" or a JSON model path.
  std::string mds = "transmission";
  double grid = 0.01;
  double dwell = 0;
  double step = 0.01;
  double horizon = 200;
  double replay_horizon = 400;
};

struct SwitchRun {
  report::RunReport report;
  hybrid::Mds mds;
  hybrid::SimConfig sim;
  hybrid::SwitchResult result;
  std::optional<hybrid::ClosedLoopResult> replay;
  std::map<std::string, hybrid::RealInterval> reference;
};

SwitchRun run_switch(const SwitchConfig& config, framework::AuditLog* audit = nullptr);

}  // namespace scid::runs
