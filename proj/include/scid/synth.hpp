#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "scid/ast.hpp"
#include "scid/bitvec.hpp"
#include "scid/framework.hpp"

namespace scid::synth {

using Values = std::vector<std::uint64_t>;

/// A bit-vector operator; `semantics` is a term over the variables in0, in1, ...
struct Component {
  std::string name;
  unsigned arity = 0;
  bv::Term semantics;
  unsigned width = 8;

  [[nodiscard]] bv::Term apply(std::span<const bv::Term> args) const;
  [[nodiscard]] std::uint64_t eval(std::span<const std::uint64_t> args) const;
};

/// Builtin vocabulary: xor and or not add sub mul wire ite, shlK, lshrK and
/// constK (zero-arity constant K).
Component make_component(const std::string& name, unsigned width);

struct ComponentLibrary {
  std::vector<Component> components;
  std::size_t inputs = 1;
  std::size_t outputs = 1;
  unsigned width = 8;
  /// Restricts program outputs to line results (no output wired straight to an input).
  bool outputs_from_lines = false;
  /// Forbids a line from reading the same location twice, e.g. xor(x, x).
  bool distinct_operands = false;

  void validate() const;
  [[nodiscard]] std::string describe() const;
};

ComponentLibrary make_library(const std::vector<std::string>& names, std::size_t inputs, std::size_t outputs,
                              unsigned width, bool outputs_from_lines = false);
/// `{ "width": 8, "inputs": 2, "outputs": 2, "components": ["xor", ...] }`, optional "outputs_from_lines"
/// and "distinct_operands" flags.
ComponentLibrary parse_library(const std::string& json_text);
ComponentLibrary load_library(const std::string& path);

/// Locations 0..inputs-1 are program inputs; location inputs+k is line k.
struct Line {
  std::size_t component = 0;
  std::vector<std::size_t> operands;
  friend bool operator==(const Line&, const Line&) = default;
};

struct ProgramCandidate {
  std::vector<Line> lines;
  std::vector<std::size_t> outputs;
  friend bool operator==(const ProgramCandidate&, const ProgramCandidate&) = default;
};

bool well_formed(const ComponentLibrary& lib, const ProgramCandidate& prog);
Values interpret(const ComponentLibrary& lib, const ProgramCandidate& prog, std::span<const std::uint64_t> inputs);
/// Outputs as terms over the given input terms.
std::vector<bv::Term> symbolic(const ComponentLibrary& lib, const ProgramCandidate& prog,
                               std::span<const bv::Term> inputs);
/// Straight-line listing, one `vK = op(args)` per line.
std::string to_source(const ComponentLibrary& lib, const ProgramCandidate& prog);

struct IoExample {
  Values inputs;
  Values outputs;
};

bool consistent(const ComponentLibrary& lib, const ProgramCandidate& prog, std::span<const IoExample> examples);

struct SynthOptions {
  bv::SolverOptions solver;
};

/// nullopt means UNREALIZABLE.
std::optional<ProgramCandidate> synthesize_consistent(const ComponentLibrary& lib,
                                                      std::span<const IoExample> examples,
                                                      const SynthOptions& options = {});

struct Distinguishing {
  Values input;
  ProgramCandidate alternative;
};

/// nullopt means every consistent program agrees with prog on every input.
std::optional<Distinguishing> find_distinguishing_input(const ComponentLibrary& lib,
                                                        std::span<const IoExample> examples,
                                                        const ProgramCandidate& prog,
                                                        const SynthOptions& options = {});

/// I/O oracle; `symbolic` (terms over `input_names`) enables solver-based checks.
struct Oracle {
  std::string name;
  std::size_t inputs = 1;
  std::size_t outputs = 1;
  unsigned width = 8;
  std::function<Values(std::span<const std::uint64_t>)> fn;
  std::vector<std::string> input_names;
  std::optional<std::vector<bv::Term>> symbolic;

  Values operator()(std::span<const std::uint64_t> in) const { return fn(in); }
};

Oracle oracle_from_program(const frontend::Program& p);
/// identity, xor, and, or, add, sub, interchange, multiply45.
Oracle builtin_oracle(const std::string& name, unsigned width);
std::vector<std::string> builtin_oracle_names();

enum class SynthStatus { Success, Unrealizable, Budget };
std::string_view status_name(SynthStatus s);

struct SynthesisResult {
  SynthStatus status = SynthStatus::Budget;
  std::optional<ProgramCandidate> program;
  std::size_t iterations = 0;
  std::vector<IoExample> queries;
  /// Version-space sizes before each iteration when counting is enabled.
  std::vector<std::size_t> version_space;
};

struct OgisOptions {
  std::size_t max_iters = 64;
  SynthOptions synth;
  /// Recount consistent programs by enumeration at every iteration (test mode).
  bool count_version_space = false;
  std::size_t enumeration_budget = 100000;
};

SynthesisResult ogis_loop(const ComponentLibrary& lib, const Oracle& oracle, std::uint64_t seed,
                          const OgisOptions& options = {});

enum class EquivalenceStatus { Equivalent, Counterexample, Uncheckable };
std::string_view status_name(EquivalenceStatus s);

struct EquivalenceResult {
  EquivalenceStatus status = EquivalenceStatus::Uncheckable;
  std::optional<Values> counterexample;
};

/// Exhaustive when inputs * width <= exhaustive_bits, otherwise solver-based
/// through the oracle's symbolic model when present.
EquivalenceResult verify_equivalence(const ComponentLibrary& lib, const ProgramCandidate& prog, const Oracle& oracle,
                                     unsigned exhaustive_bits = 16);

class EnumerationBudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Every well-formed program of the library; the visitor returns false to stop.
void enumerate_programs(const ComponentLibrary& lib, const std::function<bool(const ProgramCandidate&)>& visit,
                        std::size_t budget = 1'000'000);
std::size_t count_consistent(const ComponentLibrary& lib, std::span<const IoExample> examples,
                             std::size_t budget = 1'000'000);

/// Outputs on every input, input 0 varying fastest; one entry per (input, output).
using TruthTable = std::vector<std::uint64_t>;

TruthTable truth_table(const ComponentLibrary& lib, const ProgramCandidate& prog);
TruthTable truth_table(const Oracle& oracle);

/// C_H: functions computed by the well-formed programs of the library.
framework::Enumerator<TruthTable> program_space(const ComponentLibrary& lib, std::size_t budget = 1'000'000);
/// C_S: every function from `inputs` to `outputs` values of the given width,
/// `first` (when given) ahead of the rest.
framework::Enumerator<TruthTable> function_space(std::size_t inputs, std::size_t outputs, unsigned width,
                                                std::optional<TruthTable> first = std::nullopt);

/// The "loop-free compositions of the library" hypothesis; the size is
/// filled in when the programs can be counted within the budget.
framework::StructureHypothesisDescriptor components_hypothesis(const ComponentLibrary& lib,
                                                               std::size_t count_budget = 100000);

/// Hypothesis validity for (library, oracle) by enumeration: some program over the library matches the oracle.
framework::Validity check_library_validity(const ComponentLibrary& lib, const Oracle& oracle,
                                           std::uint64_t budget = std::uint64_t{1} << 34);

}  // namespace scid::synth
