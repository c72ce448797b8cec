#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "scid/cfg.hpp"
#include "scid/paths.hpp"
#include "scid/rational.hpp"

namespace scid::timing {

using paths::BasisSet;
using paths::PathVector;
using paths::Test;

enum class Law { Zero, Uniform, CacheLike };
std::string_view law_name(Law l);
Law parse_law(std::string_view s);

/// Simulated platform: observed time = w.p + pi.p with pi drawn per run.
///  - zero: pi = 0
///  - uniform: pi_e ~ U[-noise, noise] independently per edge of the path
///  - cachelike: uniform noise plus a mean extra of mu_max on the first
///    marked edge the path takes
struct PlatformModel {
  std::vector<Rational> weights;
  Law law = Law::Zero;
  double mu_max = 0;
  double rho = 0;
  double noise = 1.0;
  std::vector<std::size_t> marked_edges;
  std::uint64_t seed = 0;

  /// Mean of pi.p under the law.
  [[nodiscard]] Rational mean_perturbation(const PathVector& p) const;
  /// w.p
  [[nodiscard]] Rational nominal(const PathVector& p) const;
  [[nodiscard]] Rational expected_time(const PathVector& p) const { return nominal(p) + mean_perturbation(p); }
  void validate(std::size_t num_edges) const;
};

/// Edge weight = 1 + cost of the target block (1 per assignment, 8 per multiplication).
std::vector<Rational> auto_weights(const frontend::Cfg& cfg);

/// Reads `{ "weights": [..] | "auto", "law": ..., "mu_max": x, "rho": y }`
/// with optional "noise" and "marked_edges".
PlatformModel load_platform(const std::string& path, const frontend::Cfg& cfg);
PlatformModel parse_platform(const std::string& json_text, const frontend::Cfg& cfg);

/// One run along p; a pure function of (platform.seed, trial).
Rational measure(const PlatformModel& platform, const PathVector& p, std::uint64_t trial);

/// Replays the test through the DAG, then measures the path it takes.
Rational execute(const PlatformModel& platform, const frontend::Cfg& cfg, const Test& test, std::uint64_t trial);

struct Trial {
  std::size_t index;
  Rational time;
};

struct MeasurementLog {
  std::vector<Trial> trials;
};

struct TrialOptions {
  bool round_robin = false;
};

MeasurementLog run_trials(const PlatformModel& platform, const BasisSet& basis, std::size_t n_trials,
                          std::uint64_t seed, const TrialOptions& options = {});

std::size_t trial_count(std::size_t basis_size, double delta, double factor = 20.0);

class NotInSpan : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Per-basis-path sample means.
std::vector<Rational> fit_predictor(const BasisSet& basis, const MeasurementLog& log);

Rational predict_time(const BasisSet& basis, const std::vector<Rational>& lengths, const PathVector& p);

struct WorstCase {
  PathVector path;
  Test test;
  Rational predicted;
};

struct SearchOptions {
  std::size_t path_budget = std::size_t{1} << 16;
  bv::SolverOptions solver;
};

WorstCase find_worst_case(const frontend::Cfg& cfg, const BasisSet& basis, const std::vector<Rational>& lengths,
                          const SearchOptions& options = {});

enum class Answer { Yes, No };

struct TimingVerdict {
  Answer answer = Answer::Yes;
  std::optional<Rational> tau;  // nullopt stands for an unbounded tau
  Rational tau_star;
  Rational predicted;
  PathVector worst_path;
  std::optional<Test> witness_test;
  // Pipeline artefacts kept for reports.
  BasisSet basis;
  MeasurementLog log;
  std::vector<Rational> lengths;
  std::size_t n_trials = 0;
};

struct TaOptions {
  std::uint64_t seed = 0;
  double trial_factor = 20.0;
  bool round_robin = false;
  paths::BasisOptions basis;
  SearchOptions search;
};

TimingVerdict answer_ta(const frontend::Cfg& cfg, const PlatformModel& platform, std::optional<Rational> tau,
                        double delta, const TaOptions& options = {});

struct PathTiming {
  std::size_t path_id;
  PathVector path;
  Rational predicted;
  Rational actual;
};

/// Predicted and measured time of every feasible path, in enumeration order.
std::vector<PathTiming> path_distribution(const frontend::Cfg& cfg, const PlatformModel& platform,
                                          const BasisSet& basis, const std::vector<Rational>& lengths,
                                          const SearchOptions& options = {});

}  // namespace scid::timing
