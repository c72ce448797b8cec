#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "scid/expr.hpp"

namespace scid::hybrid {

struct Variable {
  std::string name;
  std::string unit;
};

struct Definition {
  std::string name;
  RealExpr expr;
};

struct Mode {
  std::string name;
  /// One right-hand side per state variable.
  std::vector<RealExpr> rhs;
  /// Auxiliary quantities such as efficiency; evaluated in dependency order.
  std::vector<Definition> defs;
  /// When false the dwell time does not apply to exits from this mode.
  bool dwell = true;
};

/// Closed interval in grid units: the real interval is [lo*g, hi*g].
struct GridInterval {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  friend bool operator==(const GridInterval&, const GridInterval&) = default;
};

/// Real-valued interval as written in a model file.
struct RealInterval {
  double lo = 0;
  double hi = 0;
};

/// Hyperbox on the grid; unconstrained dimensions hold nullopt.
struct Guard {
  std::vector<std::optional<GridInterval>> dims;
  bool empty = false;

  static Guard unconstrained(std::size_t n);
  static Guard none(std::size_t n);
  /// Membership rounds each constrained coordinate to the nearest grid point.
  [[nodiscard]] bool contains(std::span<const double> state, double grid) const;
  [[nodiscard]] bool subset_of(const Guard& other) const;
  [[nodiscard]] std::uint64_t point_count() const;
  [[nodiscard]] std::string to_string(const std::vector<Variable>& vars, double grid) const;
  void validate() const;
  friend bool operator==(const Guard&, const Guard&) = default;
};

struct Transition {
  std::string name;
  std::size_t from = 0;
  std::size_t to = 0;
  /// Initial overapproximation, per variable.
  std::vector<std::optional<RealInterval>> initial;
  /// Not re-learned by the fixpoint loop.
  bool fixed = false;
  /// The fixpoint loop fails when this guard becomes empty.
  bool required = true;
};

struct Mds {
  std::string name;
  std::vector<Variable> vars;
  std::vector<Mode> modes;
  std::vector<Transition> transitions;
  /// Safety predicate, evaluated in the current mode (state variables and that mode's definitions).
  RealExpr spec;
  std::size_t initial_mode = 0;
  std::vector<double> initial_state;
  /// Values used for unconstrained coordinates when labelling guard points.
  std::vector<double> probe_state;
  /// Filled by finalize(): the safety predicate bound in each mode.
  std::vector<RealExpr> spec_by_mode;

  /// Resolves names, orders definitions and binds every expression; throws std::invalid_argument.
  void finalize();
  [[nodiscard]] std::size_t mode_index(std::string_view name) const;
  [[nodiscard]] std::size_t var_index(std::string_view name) const;
  [[nodiscard]] std::vector<std::string> definition_names() const;
  [[nodiscard]] std::vector<std::size_t> exits(std::size_t mode) const;

  /// Fills `slots` with state then definitions of `mode`.
  void environment(std::size_t mode, std::span<const double> state, std::vector<double>& slots) const;
  void derivative(std::size_t mode, std::span<const double> state, std::span<double> out) const;
  [[nodiscard]] bool safe(std::size_t mode, std::span<const double> state) const;
  /// Value of a definition in `mode`, or NaN when the mode lacks it.
  [[nodiscard]] double definition(std::size_t mode, std::string_view name, std::span<const double> state) const;
};

struct SimConfig {
  double step = 0.01;
  double horizon = 200;
  double dwell = 0;
  double grid = 0.01;

  void validate() const;
};

/// Grid guards from each transition's initial overapproximation.
std::vector<Guard> initial_guards(const Mds& mds, double grid);

enum class SimOutcome { SafeExit, Unsafe, NoExit };
std::string_view to_string(SimOutcome o);

struct SimResult {
  SimOutcome outcome = SimOutcome::NoExit;
  /// Unsafe because the state stopped being finite.
  bool numeric = false;
  std::vector<double> state;
  std::optional<std::size_t> exit_transition;
  double time = 0;
  std::uint64_t steps = 0;
};

/// Classical fourth-order Runge-Kutta step.
void rk4_step(const Mds& mds, std::size_t mode, std::vector<double>& state, double h);

/// Integrates `mode` from `entry`. Safety is checked at every sample from t = 0;
/// exits are enabled from the first sample with t >= dwell (when the mode has a dwell).
SimResult simulate_mode(const Mds& mds, std::size_t mode, std::span<const double> entry,
                        const std::vector<Guard>& guards, const SimConfig& cfg);

/// POSITIVE (true) exactly when simulate_mode reports a safe exit.
bool label_state(const Mds& mds, std::size_t mode, std::span<const double> state, const std::vector<Guard>& guards,
                 const SimConfig& cfg);

using GridPoint = std::vector<std::int64_t>;
/// Labels a grid point; coordinates of unconstrained dimensions are unspecified.
using Labeler = std::function<bool(const GridPoint&)>;

class LabelBudgetExceeded : public std::runtime_error {
public:
  LabelBudgetExceeded(const std::string& msg, Guard partial) : std::runtime_error(msg), partial_(std::move(partial)) {}
  [[nodiscard]] const Guard& partial() const { return partial_; }

private:
  Guard partial_;
};

struct LearnOptions {
  std::uint64_t max_labels = std::uint64_t{1} << 22;
  /// Random seed probes tried in more than one dimension before falling back to a full scan.
  std::uint64_t max_seed_probes = 4096;
  /// Compare against an exhaustive scan when the box has at most this many points.
  std::uint64_t cross_check_limit = 0;
};

struct LearnResult {
  /// Empty guard when no point labels positive.
  Guard box;
  std::uint64_t labels = 0;
  /// Some observed label contradicts the learned box.
  bool non_monotone = false;
  std::optional<bool> cross_check_agrees;
  std::vector<std::string> log;
};

/// Seeds with the first positive point in van der Corput order (box centre
/// first), then bisects each constrained dimension, lower end then upper end.
LearnResult learn_hyperbox(const Labeler& labeler, const Guard& start_box, const LearnOptions& options = {});

/// Bounding box of every positive point in `start_box`; EMPTY when there is none.
Guard exhaustive_box(const Labeler& labeler, const Guard& start_box);

struct SwitchOptions {
  std::size_t max_passes = 64;
  LearnOptions learn;
  /// Visiting order of transitions; declaration order when empty.
  std::vector<std::size_t> order;
};

struct PassRecord {
  std::vector<Guard> guards;
  std::size_t changed = 0;
};

struct SwitchResult {
  bool success = false;
  std::string message;
  std::vector<Guard> guards;
  std::vector<PassRecord> passes;
  std::uint64_t labels = 0;
  bool non_monotone = false;
  std::vector<std::string> log;
};

/// Guard-shrinking fixpoint: repeated passes over transitions until one pass changes nothing.
SwitchResult synthesize_switching(const Mds& mds, std::vector<Guard> guards, const SimConfig& cfg,
                                  const SwitchOptions& options = {});

struct PolicyState {
  std::size_t mode = 0;
  std::span<const double> state;
  double time = 0;
  double time_in_mode = 0;
};

/// Requested transition, or nullopt to stay in the current mode.
using Policy = std::function<std::optional<std::size_t>(const PolicyState&)>;
using Goal = std::function<bool(std::size_t mode, std::span<const double> state, double time)>;

struct TraceSample {
  double time = 0;
  std::size_t mode = 0;
  std::vector<double> state;
  /// Values of Mds::definition_names() in the current mode.
  std::vector<double> defs;
};

struct SwitchEvent {
  double time = 0;
  std::size_t transition = 0;
  std::vector<double> state;
};

struct Verdict {
  bool safe = true;
  bool goal_reached = false;
  bool stuck = false;
  std::optional<double> violation_time;
  std::vector<double> final_state;
  std::size_t final_mode = 0;
  double final_time = 0;
};

struct ClosedLoopResult {
  std::vector<TraceSample> samples;
  std::vector<SwitchEvent> events;
  Verdict verdict;
};

struct ClosedLoopOptions {
  double horizon = 400;
  std::size_t switches_per_sample = 4;
  /// Keep every k-th sample in the trace; verdicts use every sample.
  std::size_t record_every = 1;
};

/// Replays the hybrid system: a requested switch fires only when its guard holds
/// and the dwell time has elapsed.
ClosedLoopResult closed_loop_simulate(const Mds& mds, const std::vector<Guard>& guards, std::size_t start_mode,
                                      std::span<const double> start_state, const Policy& policy, const Goal& goal,
                                      const SimConfig& cfg, const ClosedLoopOptions& options = {});

/// Requests the first exit transition whose guard holds; for models without a bundled policy.
Policy first_enabled_policy(const Mds& mds, const std::vector<Guard>& guards, double grid);

// Transmission benchmark.

Mds transmission();
inline constexpr double kThetaMax = 1700;

/// Reference guard endpoints for the transmission, keyed by transition name.
std::map<std::string, RealInterval> transmission_reference(bool dwell);

Policy transmission_policy(const Mds& mds);
/// In Neutral at theta_max with |omega| within the tolerance.
Goal transmission_goal(const Mds& mds, double omega_tolerance = 0.1, double theta_tolerance = 0.01);

// Model files.

Mds parse_mds(const std::string& json_text);
Mds load_mds(const std::string& path);
/// "transmission" or a path to a JSON model.
Mds resolve_mds(const std::string& spec);
std::string mds_to_json(const Mds& mds);

}  // namespace scid::hybrid
