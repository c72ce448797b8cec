// Bit-blasting of bit-vector terms into an and/xor gate graph, Tseitin
// translation of the reachable gates, and the solve entry points.

#include <algorithm>
#include <ostream>
#include <unordered_map>

#include "scid/bitvec.hpp"
#include "scid/sat.hpp"

namespace scid::bv {
namespace {

// Signals are literals over gate nodes: 2*node + inverted. Node 0 is the
// constant false, so signal 0 is false and signal 1 is true.
using Signal = std::uint32_t;
constexpr Signal kFalse = 0;
constexpr Signal kTrue = 1;

inline Signal inv(Signal s) { return s ^ 1U; }
inline std::uint32_t node_of(Signal s) { return s >> 1; }
inline bool inverted(Signal s) { return (s & 1U) != 0; }

enum class GateKind : std::uint8_t { Const, Input, And, Xor };

struct Gate {
  GateKind kind;
  Signal a = 0;
  Signal b = 0;
};

class Circuit {
public:
  Circuit() { gates_.push_back({GateKind::Const}); }

  Signal input() {
    gates_.push_back({GateKind::Input});
    return static_cast<Signal>(2 * (gates_.size() - 1));
  }

  Signal mk_and(Signal a, Signal b) {
    if (a == kFalse || b == kFalse || a == inv(b)) return kFalse;
    if (a == kTrue) return b;
    if (b == kTrue || a == b) return a;
    if (a > b) std::swap(a, b);
    return intern(GateKind::And, a, b);
  }

  Signal mk_or(Signal a, Signal b) { return inv(mk_and(inv(a), inv(b))); }

  Signal mk_xor(Signal a, Signal b) {
    if (a == kFalse) return b;
    if (b == kFalse) return a;
    if (a == kTrue) return inv(b);
    if (b == kTrue) return inv(a);
    if (a == b) return kFalse;
    if (a == inv(b)) return kTrue;
    // Normalize inversions onto the output.
    bool flip = false;
    if (inverted(a)) {
      a = inv(a);
      flip = !flip;
    }
    if (inverted(b)) {
      b = inv(b);
      flip = !flip;
    }
    if (a > b) std::swap(a, b);
    const Signal s = intern(GateKind::Xor, a, b);
    return flip ? inv(s) : s;
  }

  Signal mk_mux(Signal c, Signal t, Signal e) {
    if (c == kTrue) return t;
    if (c == kFalse) return e;
    if (t == e) return t;
    return mk_or(mk_and(c, t), mk_and(inv(c), e));
  }

  [[nodiscard]] const Gate& gate(std::uint32_t n) const { return gates_[n]; }
  [[nodiscard]] std::size_t size() const { return gates_.size(); }

private:
  Signal intern(GateKind k, Signal a, Signal b) {
    const std::uint64_t key = (static_cast<std::uint64_t>(a) << 33) | (static_cast<std::uint64_t>(b) << 1) |
                              (k == GateKind::Xor ? 1U : 0U);
    if (auto it = table_.find(key); it != table_.end()) return it->second;
    gates_.push_back({k, a, b});
    const auto s = static_cast<Signal>(2 * (gates_.size() - 1));
    table_.emplace(key, s);
    return s;
  }

  std::vector<Gate> gates_;
  std::unordered_map<std::uint64_t, Signal> table_;
};

using Bits = std::vector<Signal>;  // LSB first

class Blaster {
public:
  explicit Blaster(Circuit& c) : c_(c) {}

  const Bits& blast(const Term& t) {
    if (auto it = memo_.find(t.id()); it != memo_.end()) return it->second;
    Bits out = compute(t);
    return memo_.emplace(t.id(), std::move(out)).first->second;
  }

  [[nodiscard]] const std::map<std::string, Bits>& inputs() const { return inputs_; }

private:
  Bits compute(const Term& t) {
    const unsigned w = t.width();
    switch (t.kind()) {
      case Kind::Const: {
        Bits r(w);
        for (unsigned i = 0; i < w; ++i) r[i] = ((t.value() >> i) & 1U) != 0 ? kTrue : kFalse;
        return r;
      }
      case Kind::Var: {
        auto it = inputs_.find(t.name());
        if (it != inputs_.end()) {
          if (it->second.size() != w)
            throw std::invalid_argument("variable '" + t.name() + "' used at two widths");
          return it->second;
        }
        Bits r(w);
        for (unsigned i = 0; i < w; ++i) r[i] = c_.input();
        inputs_.emplace(t.name(), r);
        return r;
      }
      case Kind::Add: return adder(blast(t.child(0)), blast(t.child(1)), kFalse);
      case Kind::Sub: {
        Bits nb = blast(t.child(1));
        for (auto& s : nb) s = inv(s);
        return adder(blast(t.child(0)), nb, kTrue);
      }
      case Kind::Mul: return multiplier(blast(t.child(0)), blast(t.child(1)));
      case Kind::And:
      case Kind::Or:
      case Kind::Xor: {
        const Bits& a = blast(t.child(0));
        const Bits& b = blast(t.child(1));
        Bits r(w);
        for (unsigned i = 0; i < w; ++i) {
          r[i] = t.kind() == Kind::And  ? c_.mk_and(a[i], b[i])
                 : t.kind() == Kind::Or ? c_.mk_or(a[i], b[i])
                                        : c_.mk_xor(a[i], b[i]);
        }
        return r;
      }
      case Kind::Not: {
        Bits r = blast(t.child(0));
        for (auto& s : r) s = inv(s);
        return r;
      }
      case Kind::Shl: {
        const Bits& a = blast(t.child(0));
        const auto k = static_cast<unsigned>(t.shift_amount());
        Bits r(w, kFalse);
        for (unsigned i = k; i < w; ++i) r[i] = a[i - k];
        return r;
      }
      case Kind::Lshr: {
        const Bits& a = blast(t.child(0));
        const auto k = static_cast<unsigned>(t.shift_amount());
        Bits r(w, kFalse);
        for (unsigned i = 0; i + k < w; ++i) r[i] = a[i + k];
        return r;
      }
      case Kind::Ite: {
        const Signal cond = blast(t.child(0))[0];
        const Bits& a = blast(t.child(1));
        const Bits& b = blast(t.child(2));
        Bits r(w);
        for (unsigned i = 0; i < w; ++i) r[i] = c_.mk_mux(cond, a[i], b[i]);
        return r;
      }
      case Kind::Eq: {
        const Bits& a = blast(t.child(0));
        const Bits& b = blast(t.child(1));
        Signal acc = kTrue;
        for (std::size_t i = 0; i < a.size(); ++i) acc = c_.mk_and(acc, inv(c_.mk_xor(a[i], b[i])));
        return {acc};
      }
      case Kind::Ult: return {less_than(blast(t.child(0)), blast(t.child(1)))};
      case Kind::Ule: return {inv(less_than(blast(t.child(1)), blast(t.child(0))))};
    }
    throw std::logic_error("unhandled term kind");
  }

  Bits adder(const Bits& a, const Bits& b, Signal carry) {
    Bits r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      const Signal axb = c_.mk_xor(a[i], b[i]);
      r[i] = c_.mk_xor(axb, carry);
      carry = c_.mk_or(c_.mk_and(a[i], b[i]), c_.mk_and(carry, axb));
    }
    return r;
  }

  Bits multiplier(const Bits& a, const Bits& b) {
    const std::size_t w = a.size();
    Bits acc(w, kFalse);
    for (std::size_t i = 0; i < w; ++i) {
      if (b[i] == kFalse) continue;
      Bits partial(w, kFalse);
      for (std::size_t j = i; j < w; ++j) partial[j] = c_.mk_and(a[j - i], b[i]);
      acc = adder(acc, partial, kFalse);
    }
    return acc;
  }

  // Ripple comparison from the least significant bit upward.
  Signal less_than(const Bits& a, const Bits& b) {
    Signal lt = kFalse;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const Signal bit_lt = c_.mk_and(inv(a[i]), b[i]);
      const Signal bit_eq = inv(c_.mk_xor(a[i], b[i]));
      lt = c_.mk_or(bit_lt, c_.mk_and(bit_eq, lt));
    }
    return lt;
  }

  Circuit& c_;
  std::unordered_map<const detail::Node*, Bits> memo_;
  std::map<std::string, Bits> inputs_;
};

// Tseitin translation of the gates reachable from the requested roots.
class CnfBuilder {
public:
  CnfBuilder(const Circuit& c, sat::Solver& s) : c_(c), s_(s), var_of_(c.size(), -1) {}

  sat::Lit lit(Signal sig) {
    const sat::Lit base = sat::pos(encode(node_of(sig)));
    return inverted(sig) ? ~base : base;
  }

  [[nodiscard]] std::optional<sat::Var> existing(std::uint32_t node) const {
    if (node < var_of_.size() && var_of_[node] >= 0) return var_of_[node];
    return std::nullopt;
  }

private:
  sat::Var encode(std::uint32_t root) {
    if (var_of_[root] >= 0) return var_of_[root];
    // Iterative post-order so deep adder chains do not recurse.
    std::vector<std::uint32_t> stack{root};
    while (!stack.empty()) {
      const std::uint32_t n = stack.back();
      if (var_of_[n] >= 0) {
        stack.pop_back();
        continue;
      }
      const Gate& g = c_.gate(n);
      if (g.kind == GateKind::And || g.kind == GateKind::Xor) {
        const std::uint32_t na = node_of(g.a);
        const std::uint32_t nb = node_of(g.b);
        if (var_of_[na] < 0 || var_of_[nb] < 0) {
          if (var_of_[na] < 0) stack.push_back(na);
          if (var_of_[nb] < 0) stack.push_back(nb);
          continue;
        }
      }
      stack.pop_back();
      const sat::Var v = s_.new_var();
      var_of_[n] = v;
      const sat::Lit out = sat::pos(v);
      switch (g.kind) {
        case GateKind::Const: s_.add_clause({~out}); break;
        case GateKind::Input: break;
        case GateKind::And: {
          const sat::Lit a = lit(g.a);
          const sat::Lit b = lit(g.b);
          s_.add_clause({~out, a});
          s_.add_clause({~out, b});
          s_.add_clause({out, ~a, ~b});
          break;
        }
        case GateKind::Xor: {
          const sat::Lit a = lit(g.a);
          const sat::Lit b = lit(g.b);
          s_.add_clause({~out, a, b});
          s_.add_clause({~out, ~a, ~b});
          s_.add_clause({out, ~a, b});
          s_.add_clause({out, a, ~b});
          break;
        }
      }
    }
    return var_of_[root];
  }

  const Circuit& c_;
  sat::Solver& s_;
  std::vector<sat::Var> var_of_;
};

struct Encoded {
  Circuit circuit;
  std::unique_ptr<Blaster> blaster;
  std::unique_ptr<sat::Solver> solver;
  std::unique_ptr<CnfBuilder> cnf;
  std::vector<sat::Lit> assumption_lits;
};

std::unique_ptr<Encoded> encode(const Formula& f, std::span<const Term> assumptions, const SolverOptions& options) {
  auto e = std::make_unique<Encoded>();
  e->blaster = std::make_unique<Blaster>(e->circuit);
  std::vector<Signal> roots;
  for (const Term& a : f.assertions) roots.push_back(e->blaster->blast(a)[0]);
  std::vector<Signal> assumed;
  for (const Term& a : assumptions) {
    if (!a.valid() || a.width() != 1) throw std::invalid_argument("assumptions must have width 1");
    assumed.push_back(e->blaster->blast(a)[0]);
  }
  sat::Options so;
  so.seed = options.seed;
  so.conflict_limit = options.conflict_limit;
  e->solver = std::make_unique<sat::Solver>(so);
  e->cnf = std::make_unique<CnfBuilder>(e->circuit, *e->solver);
  for (Signal r : roots) {
    if (r == kTrue) continue;
    e->solver->add_clause({e->cnf->lit(r)});
  }
  for (Signal r : assumed) e->assumption_lits.push_back(e->cnf->lit(r));
  // Every input bit gets a variable so the model covers all free variables.
  for (const auto& [name, bits] : e->blaster->inputs())
    for (Signal s : bits) (void)e->cnf->lit(s);
  return e;
}

SolveResult run(const Formula& f, std::span<const Term> assumptions, const SolverOptions& options) {
  auto e = encode(f, assumptions, options);
  const sat::Status st = e->solver->solve(e->assumption_lits);
  if (st == sat::Status::Unknown) throw BudgetExceeded();
  SolveResult result;
  if (st == sat::Status::Unsat) return result;
  result.verdict = Verdict::Sat;
  for (const auto& [name, bits] : e->blaster->inputs()) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < bits.size(); ++i)
      if (e->solver->model_value(e->cnf->lit(bits[i]))) v |= std::uint64_t{1} << i;
    result.model.emplace(name, v);
  }
  for (const Term& a : f.assertions)
    if (evaluate(a, result.model) != 1) throw std::logic_error("solver model violates an assertion");
  for (const Term& a : assumptions)
    if (evaluate(a, result.model) != 1) throw std::logic_error("solver model violates an assumption");
  return result;
}

}  // namespace

SolveResult solve(const Formula& f, const SolverOptions& options) { return run(f, {}, options); }

SolveResult solve_under(const Formula& f, std::span<const Term> assumptions, const SolverOptions& options) {
  return run(f, assumptions, options);
}

void write_dimacs(const Formula& f, std::ostream& os) {
  auto e = encode(f, {}, {});
  os << "c scid bit-blasted formula, " << f.assertions.size() << " assertion(s)\n";
  for (const auto& [name, bits] : e->blaster->inputs()) {
    os << "c var " << name << " :";
    for (Signal s : bits) {
      const sat::Lit l = e->cnf->lit(s);
      os << ' ' << (l.negated() ? -(l.var() + 1) : (l.var() + 1));
    }
    os << '\n';
  }
  e->solver->write_dimacs(os);
}

std::uint64_t simulate_circuit(const Term& t, const Model& m) {
  Circuit c;
  Blaster b(c);
  const Bits out = b.blast(t);
  std::vector<bool> value(c.size(), false);
  for (const auto& [name, bits] : b.inputs()) {
    auto it = m.find(name);
    if (it == m.end()) throw UnassignedVariable(name);
    for (std::size_t i = 0; i < bits.size(); ++i) value[node_of(bits[i])] = ((it->second >> i) & 1U) != 0;
  }
  auto sig = [&](Signal s) { return value[node_of(s)] != inverted(s); };
  // Gates are created after their operands, so index order is topological.
  for (std::uint32_t n = 1; n < c.size(); ++n) {
    const Gate& g = c.gate(n);
    if (g.kind == GateKind::And) value[n] = sig(g.a) && sig(g.b);
    if (g.kind == GateKind::Xor) value[n] = sig(g.a) != sig(g.b);
  }
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (sig(out[i])) r |= std::uint64_t{1} << i;
  return r;
}

}  // namespace scid::bv
