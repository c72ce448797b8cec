#pragma once

// CDCL propositional solver: two watched literals, first-UIP learning,
// VSIDS with phase saving, geometric restarts.

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

namespace scid::sat {

using Var = int;

/// A literal is a variable with a sign, packed as 2*var + negated.
class Lit {
public:
  constexpr Lit() = default;
  constexpr Lit(Var v, bool negated) : code_(2 * v + (negated ? 1 : 0)) {}

  [[nodiscard]] constexpr Var var() const { return code_ >> 1; }
  [[nodiscard]] constexpr bool negated() const { return (code_ & 1) != 0; }
  [[nodiscard]] constexpr int index() const { return code_; }
  [[nodiscard]] constexpr Lit operator~() const { return from_index(code_ ^ 1); }

  static constexpr Lit from_index(int code) {
    Lit l;
    l.code_ = code;
    return l;
  }

  friend constexpr bool operator==(Lit, Lit) = default;
  friend constexpr auto operator<=>(Lit, Lit) = default;

private:
  int code_ = -2;
};

inline constexpr Lit pos(Var v) { return Lit(v, false); }
inline constexpr Lit neg(Var v) { return Lit(v, true); }

enum class Status { Sat, Unsat, Unknown };

struct Options {
  std::uint64_t seed = 0;
  /// Conflicts allowed per solve call before giving up with Unknown.
  std::int64_t conflict_limit = std::numeric_limits<std::int64_t>::max();
  double var_decay = 0.95;
  double clause_decay = 0.999;
  int restart_first = 100;
  double restart_growth = 1.5;
};

struct Stats {
  std::int64_t decisions = 0;
  std::int64_t propagations = 0;
  std::int64_t conflicts = 0;
  std::int64_t restarts = 0;
  std::int64_t learnt_literals = 0;
};

class Solver {
public:
  explicit Solver(Options options = {});

  Var new_var();
  [[nodiscard]] int num_vars() const { return static_cast<int>(assigns_.size()); }
  [[nodiscard]] std::size_t num_clauses() const { return num_original_; }

  /// Adds a clause at decision level 0. Returns false once the clause set is
  /// known to be unsatisfiable.
  bool add_clause(std::span<const Lit> lits);
  bool add_clause(std::initializer_list<Lit> lits) {
    return add_clause(std::span<const Lit>(lits.begin(), lits.size()));
  }

  Status solve(std::span<const Lit> assumptions = {});

  /// Value of a variable in the last satisfying assignment.
  [[nodiscard]] bool model_value(Var v) const { return model_[static_cast<std::size_t>(v)]; }
  [[nodiscard]] bool model_value(Lit l) const { return model_value(l.var()) != l.negated(); }

  [[nodiscard]] const Stats& stats() const { return stats_; }

  /// Original (non-learnt) clauses in DIMACS form.
  void write_dimacs(std::ostream& os) const;

private:
  enum class Value : std::int8_t { False = -1, Undef = 0, True = 1 };

  struct Clause {
    std::vector<Lit> lits;
    bool learnt = false;
    bool deleted = false;
    double activity = 0.0;
  };

  struct Watcher {
    int clause;
    Lit blocker;
  };

  static constexpr int kNoReason = -1;

  Value value(Lit l) const {
    Value v = assigns_[static_cast<std::size_t>(l.var())];
    if (v == Value::Undef) return v;
    return ((v == Value::True) != l.negated()) ? Value::True : Value::False;
  }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  void enqueue(Lit l, int reason);
  int propagate();
  void analyze(int conflict, std::vector<Lit>& learnt, int& backtrack_level);
  bool literal_redundant(Lit l, std::uint32_t level_mask);
  void backtrack(int level);
  Lit pick_branch();
  int attach(std::vector<Lit> lits, bool learnt);
  void detach_deleted();
  void reduce_learnts();
  bool locked(int ci) const;
  Status search(std::int64_t conflicts_allowed, std::span<const Lit> assumptions);

  void bump_var(Var v);
  void bump_clause(Clause& c);
  void heap_insert(Var v);
  void heap_up(std::size_t pos);
  void heap_down(std::size_t pos);
  Var heap_pop();
  bool heap_less(Var a, Var b) const { return activity_[static_cast<std::size_t>(a)] > activity_[static_cast<std::size_t>(b)]; }

  Options options_;
  Stats stats_;
  bool ok_ = true;
  std::size_t num_original_ = 0;
  std::vector<std::vector<Lit>> original_;

  std::vector<Clause> clauses_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<Value> assigns_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<bool> polarity_;
  std::vector<double> activity_;
  std::vector<bool> seen_;
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;

  std::vector<Var> heap_;
  std::vector<int> heap_index_;

  double var_inc_ = 1.0;
  double clause_inc_ = 1.0;
  double max_learnts_ = 0.0;
  std::size_t num_learnts_ = 0;
  std::vector<bool> model_;
  std::vector<Lit> analyze_stack_;
  std::vector<Var> analyze_clear_;
};

}  // namespace scid::sat
