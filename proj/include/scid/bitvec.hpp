#pragma once

// Fixed-width bit-vector terms, their reference semantics, and a decision
// procedure that bit-blasts to CNF and runs the CDCL core.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace scid::bv {

enum class Kind { Const, Var, Add, Sub, Mul, And, Or, Xor, Not, Shl, Lshr, Ite, Eq, Ult, Ule };

std::string_view kind_name(Kind k);

class Term;

namespace detail {
struct Node {
  Kind kind;
  unsigned width;
  std::vector<Term> children;
  std::uint64_t value = 0;  // constant value, or shift amount for Shl/Lshr
  std::string name;         // Var only
};
}  // namespace detail

/// Immutable, shareable handle to a term DAG node.
class Term {
public:
  Term() = default;

  [[nodiscard]] Kind kind() const { return node_->kind; }
  [[nodiscard]] unsigned width() const { return node_->width; }
  [[nodiscard]] const std::vector<Term>& children() const { return node_->children; }
  [[nodiscard]] const Term& child(std::size_t i) const { return node_->children.at(i); }
  [[nodiscard]] std::uint64_t value() const { return node_->value; }
  [[nodiscard]] std::uint64_t shift_amount() const { return node_->value; }
  [[nodiscard]] const std::string& name() const { return node_->name; }
  [[nodiscard]] bool valid() const { return node_ != nullptr; }
  [[nodiscard]] bool is_const() const { return node_->kind == Kind::Const; }
  [[nodiscard]] const detail::Node* id() const { return node_.get(); }

  static Term make(Kind kind, unsigned width, std::vector<Term> children, std::uint64_t value = 0,
                   std::string name = {});

private:
  explicit Term(std::shared_ptr<const detail::Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::Node> node_;
};

constexpr unsigned kMaxWidth = 64;

inline std::uint64_t mask(unsigned width) {
  return width >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
}

Term constant(std::uint64_t value, unsigned width);
Term var(std::string name, unsigned width);
Term bool_const(bool b);

Term add(const Term& a, const Term& b);
Term sub(const Term& a, const Term& b);
Term mul(const Term& a, const Term& b);
Term bvand(const Term& a, const Term& b);
Term bvor(const Term& a, const Term& b);
Term bvxor(const Term& a, const Term& b);
Term bvnot(const Term& a);
Term shl(const Term& a, unsigned amount);
Term lshr(const Term& a, unsigned amount);
Term ite(const Term& cond, const Term& then_t, const Term& else_t);
Term eq(const Term& a, const Term& b);
Term ult(const Term& a, const Term& b);
Term ule(const Term& a, const Term& b);

inline Term ne(const Term& a, const Term& b) { return bvnot(eq(a, b)); }
inline Term ugt(const Term& a, const Term& b) { return ult(b, a); }
inline Term uge(const Term& a, const Term& b) { return ule(b, a); }
Term implies(const Term& a, const Term& b);
Term conjunction(std::span<const Term> terms);
Term disjunction(std::span<const Term> terms);

inline Term operator+(const Term& a, const Term& b) { return add(a, b); }
inline Term operator-(const Term& a, const Term& b) { return sub(a, b); }
inline Term operator*(const Term& a, const Term& b) { return mul(a, b); }
inline Term operator&(const Term& a, const Term& b) { return bvand(a, b); }
inline Term operator|(const Term& a, const Term& b) { return bvor(a, b); }
inline Term operator^(const Term& a, const Term& b) { return bvxor(a, b); }
inline Term operator~(const Term& a) { return bvnot(a); }

/// Structural equality (same shape, same constants, same names).
bool structurally_equal(const Term& a, const Term& b);

/// Replaces variables by the terms `lookup` returns; unmapped variables stay.
Term substitute(const Term& t, const std::function<std::optional<Term>(const std::string&)>& lookup);

std::string to_string(const Term& t);

using Model = std::map<std::string, std::uint64_t>;

class UnassignedVariable : public std::runtime_error {
public:
  explicit UnassignedVariable(const std::string& name)
      : std::runtime_error("unassigned variable '" + name + "'") {}
};

/// Unsigned bit-vector semantics; the result is always < 2^width.
std::uint64_t evaluate(const Term& t, const Model& m);

struct Formula {
  std::vector<Term> assertions;

  void add(Term t);
  /// Free variables with their widths.
  [[nodiscard]] std::map<std::string, unsigned> free_variables() const;
};

void collect_variables(const Term& t, std::map<std::string, unsigned>& out);

enum class Verdict { Sat, Unsat };

struct SolveResult {
  Verdict verdict = Verdict::Unsat;
  Model model;

  [[nodiscard]] bool sat() const { return verdict == Verdict::Sat; }
};

struct SolverOptions {
  std::uint64_t seed = 0;
  std::int64_t conflict_limit = 2'000'000;
};

/// Thrown when the conflict budget runs out; never a verdict.
class BudgetExceeded : public std::runtime_error {
public:
  BudgetExceeded() : std::runtime_error("solver conflict budget exceeded") {}
};

SolveResult solve(const Formula& f, const SolverOptions& options = {});
SolveResult solve_under(const Formula& f, std::span<const Term> assumptions, const SolverOptions& options = {});

/// Bit-blasted clause set of `f` (each assertion as a unit) in DIMACS form.
void write_dimacs(const Formula& f, std::ostream& os);

/// Gate-level circuit simulation of `t` under `m`; an independent route to
/// `evaluate` through the same circuits the solver sees.
std::uint64_t simulate_circuit(const Term& t, const Model& m);

}  // namespace scid::bv
