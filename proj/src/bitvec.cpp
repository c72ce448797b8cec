#include "scid/bitvec.hpp"

#include <sstream>
#include <unordered_map>

namespace scid::bv {

std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::Const: return "const";
    case Kind::Var: return "var";
    case Kind::Add: return "bvadd";
    case Kind::Sub: return "bvsub";
    case Kind::Mul: return "bvmul";
    case Kind::And: return "bvand";
    case Kind::Or: return "bvor";
    case Kind::Xor: return "bvxor";
    case Kind::Not: return "bvnot";
    case Kind::Shl: return "bvshl";
    case Kind::Lshr: return "bvlshr";
    case Kind::Ite: return "ite";
    case Kind::Eq: return "=";
    case Kind::Ult: return "bvult";
    case Kind::Ule: return "bvule";
  }
  return "?";
}

Term Term::make(Kind kind, unsigned width, std::vector<Term> children, std::uint64_t value, std::string name) {
  return Term(std::make_shared<const detail::Node>(
      detail::Node{kind, width, std::move(children), value, std::move(name)}));
}

namespace {

void check_width(unsigned w) {
  if (w < 1 || w > kMaxWidth) throw std::invalid_argument("bit-vector width must be in [1, 64]");
}

void check_same(const Term& a, const Term& b, std::string_view op) {
  if (!a.valid() || !b.valid()) throw std::invalid_argument(std::string(op) + ": null operand");
  if (a.width() != b.width())
    throw std::invalid_argument(std::string(op) + ": operand widths differ (" + std::to_string(a.width()) +
                                " vs " + std::to_string(b.width()) + ")");
}

bool all_const(std::initializer_list<const Term*> ts) {
  for (const Term* t : ts)
    if (!t->is_const()) return false;
  return true;
}

// Folds an operator whose operands are all constants.
Term fold(Kind kind, unsigned width, std::vector<Term> children, std::uint64_t extra = 0) {
  Term t = Term::make(kind, width, std::move(children), extra);
  return constant(evaluate(t, {}), width);
}

Term binary(Kind kind, const Term& a, const Term& b, std::string_view op) {
  check_same(a, b, op);
  if (all_const({&a, &b})) return fold(kind, a.width(), {a, b});
  return Term::make(kind, a.width(), {a, b});
}

Term compare(Kind kind, const Term& a, const Term& b, std::string_view op) {
  check_same(a, b, op);
  if (all_const({&a, &b})) return fold(kind, 1, {a, b});
  return Term::make(kind, 1, {a, b});
}

}  // namespace

Term constant(std::uint64_t value, unsigned width) {
  check_width(width);
  return Term::make(Kind::Const, width, {}, value & mask(width));
}

Term var(std::string name, unsigned width) {
  check_width(width);
  if (name.empty()) throw std::invalid_argument("variable name must be non-empty");
  return Term::make(Kind::Var, width, {}, 0, std::move(name));
}

Term bool_const(bool b) { return constant(b ? 1 : 0, 1); }

Term add(const Term& a, const Term& b) { return binary(Kind::Add, a, b, "add"); }
Term sub(const Term& a, const Term& b) { return binary(Kind::Sub, a, b, "sub"); }
Term mul(const Term& a, const Term& b) { return binary(Kind::Mul, a, b, "mul"); }
Term bvand(const Term& a, const Term& b) { return binary(Kind::And, a, b, "and"); }
Term bvor(const Term& a, const Term& b) { return binary(Kind::Or, a, b, "or"); }
Term bvxor(const Term& a, const Term& b) { return binary(Kind::Xor, a, b, "xor"); }

Term bvnot(const Term& a) {
  if (!a.valid()) throw std::invalid_argument("not: null operand");
  if (a.is_const()) return constant(~a.value(), a.width());
  return Term::make(Kind::Not, a.width(), {a});
}

Term shl(const Term& a, unsigned amount) {
  if (!a.valid()) throw std::invalid_argument("shl: null operand");
  if (amount >= a.width()) throw std::invalid_argument("shift amount must be in [0, width)");
  if (a.is_const()) return constant(a.value() << amount, a.width());
  return Term::make(Kind::Shl, a.width(), {a}, amount);
}

Term lshr(const Term& a, unsigned amount) {
  if (!a.valid()) throw std::invalid_argument("lshr: null operand");
  if (amount >= a.width()) throw std::invalid_argument("shift amount must be in [0, width)");
  if (a.is_const()) return constant(a.value() >> amount, a.width());
  return Term::make(Kind::Lshr, a.width(), {a}, amount);
}

Term ite(const Term& cond, const Term& then_t, const Term& else_t) {
  if (!cond.valid() || cond.width() != 1) throw std::invalid_argument("ite: condition must have width 1");
  check_same(then_t, else_t, "ite");
  if (cond.is_const()) return cond.value() != 0 ? then_t : else_t;
  return Term::make(Kind::Ite, then_t.width(), {cond, then_t, else_t});
}

Term eq(const Term& a, const Term& b) { return compare(Kind::Eq, a, b, "eq"); }
Term ult(const Term& a, const Term& b) { return compare(Kind::Ult, a, b, "ult"); }
Term ule(const Term& a, const Term& b) { return compare(Kind::Ule, a, b, "ule"); }

Term implies(const Term& a, const Term& b) { return bvor(bvnot(a), b); }

Term conjunction(std::span<const Term> terms) {
  Term acc = bool_const(true);
  for (const Term& t : terms) acc = bvand(acc, t);
  return acc;
}

Term disjunction(std::span<const Term> terms) {
  Term acc = bool_const(false);
  for (const Term& t : terms) acc = bvor(acc, t);
  return acc;
}

bool structurally_equal(const Term& a, const Term& b) {
  if (a.id() == b.id()) return true;
  if (!a.valid() || !b.valid()) return false;
  if (a.kind() != b.kind() || a.width() != b.width() || a.value() != b.value() || a.name() != b.name() ||
      a.children().size() != b.children().size())
    return false;
  for (std::size_t i = 0; i < a.children().size(); ++i)
    if (!structurally_equal(a.child(i), b.child(i))) return false;
  return true;
}

namespace {

Term rebuild(const Term& t, std::vector<Term> kids) {
  switch (t.kind()) {
    case Kind::Add: return add(kids[0], kids[1]);
    case Kind::Sub: return sub(kids[0], kids[1]);
    case Kind::Mul: return mul(kids[0], kids[1]);
    case Kind::And: return bvand(kids[0], kids[1]);
    case Kind::Or: return bvor(kids[0], kids[1]);
    case Kind::Xor: return bvxor(kids[0], kids[1]);
    case Kind::Not: return bvnot(kids[0]);
    case Kind::Shl: return shl(kids[0], static_cast<unsigned>(t.shift_amount()));
    case Kind::Lshr: return lshr(kids[0], static_cast<unsigned>(t.shift_amount()));
    case Kind::Ite: return ite(kids[0], kids[1], kids[2]);
    case Kind::Eq: return eq(kids[0], kids[1]);
    case Kind::Ult: return ult(kids[0], kids[1]);
    case Kind::Ule: return ule(kids[0], kids[1]);
    case Kind::Const:
    case Kind::Var: break;
  }
  return t;
}

}  // namespace

Term substitute(const Term& root, const std::function<std::optional<Term>(const std::string&)>& lookup) {
  std::unordered_map<const detail::Node*, Term> memo;
  std::function<Term(const Term&)> go = [&](const Term& t) -> Term {
    if (auto it = memo.find(t.id()); it != memo.end()) return it->second;
    Term out;
    if (t.kind() == Kind::Var) {
      auto r = lookup(t.name());
      if (r && r->width() != t.width())
        throw std::invalid_argument("substitute: width mismatch for '" + t.name() + "'");
      out = r ? *r : t;
    } else if (t.kind() == Kind::Const) {
      out = t;
    } else {
      std::vector<Term> kids;
      kids.reserve(t.children().size());
      bool changed = false;
      for (const Term& c : t.children()) {
        kids.push_back(go(c));
        changed = changed || kids.back().id() != c.id();
      }
      out = changed ? rebuild(t, std::move(kids)) : t;
    }
    memo.emplace(t.id(), out);
    return out;
  };
  return go(root);
}

std::string to_string(const Term& t) {
  std::ostringstream os;
  std::function<void(const Term&)> go = [&](const Term& x) {
    switch (x.kind()) {
      case Kind::Const: os << "#" << x.value() << ":" << x.width(); return;
      case Kind::Var: os << x.name(); return;
      case Kind::Shl:
      case Kind::Lshr:
        os << "(" << kind_name(x.kind()) << " ";
        go(x.child(0));
        os << " " << x.shift_amount() << ")";
        return;
      default:
        os << "(" << kind_name(x.kind());
        for (const Term& c : x.children()) {
          os << " ";
          go(c);
        }
        os << ")";
    }
  };
  go(t);
  return os.str();
}

std::uint64_t evaluate(const Term& root, const Model& m) {
  std::unordered_map<const detail::Node*, std::uint64_t> memo;
  std::function<std::uint64_t(const Term&)> go = [&](const Term& t) -> std::uint64_t {
    if (t.kind() == Kind::Const) return t.value();
    if (auto it = memo.find(t.id()); it != memo.end()) return it->second;
    const std::uint64_t msk = mask(t.width());
    std::uint64_t r = 0;
    switch (t.kind()) {
      case Kind::Var: {
        auto it = m.find(t.name());
        if (it == m.end()) throw UnassignedVariable(t.name());
        r = it->second & msk;
        break;
      }
      case Kind::Add: r = (go(t.child(0)) + go(t.child(1))) & msk; break;
      case Kind::Sub: r = (go(t.child(0)) - go(t.child(1))) & msk; break;
      case Kind::Mul: r = (go(t.child(0)) * go(t.child(1))) & msk; break;
      case Kind::And: r = go(t.child(0)) & go(t.child(1)); break;
      case Kind::Or: r = go(t.child(0)) | go(t.child(1)); break;
      case Kind::Xor: r = go(t.child(0)) ^ go(t.child(1)); break;
      case Kind::Not: r = ~go(t.child(0)) & msk; break;
      case Kind::Shl: r = (go(t.child(0)) << t.shift_amount()) & msk; break;
      case Kind::Lshr: r = go(t.child(0)) >> t.shift_amount(); break;
      case Kind::Ite: r = go(t.child(0)) != 0 ? go(t.child(1)) : go(t.child(2)); break;
      case Kind::Eq: r = go(t.child(0)) == go(t.child(1)) ? 1 : 0; break;
      case Kind::Ult: r = go(t.child(0)) < go(t.child(1)) ? 1 : 0; break;
      case Kind::Ule: r = go(t.child(0)) <= go(t.child(1)) ? 1 : 0; break;
      case Kind::Const: break;
    }
    memo.emplace(t.id(), r);
    return r;
  };
  return go(root);
}

void collect_variables(const Term& root, std::map<std::string, unsigned>& out) {
  std::unordered_map<const detail::Node*, bool> seen;
  std::function<void(const Term&)> go = [&](const Term& t) {
    if (!seen.emplace(t.id(), true).second) return;
    if (t.kind() == Kind::Var) {
      auto [it, inserted] = out.emplace(t.name(), t.width());
      if (!inserted && it->second != t.width())
        throw std::invalid_argument("variable '" + t.name() + "' used at two widths");
      return;
    }
    for (const Term& c : t.children()) go(c);
  };
  go(root);
}

void Formula::add(Term t) {
  if (!t.valid() || t.width() != 1) throw std::invalid_argument("assertions must have width 1");
  assertions.push_back(std::move(t));
}

std::map<std::string, unsigned> Formula::free_variables() const {
  std::map<std::string, unsigned> out;
  for (const Term& a : assertions) collect_variables(a, out);
  return out;
}

}  // namespace scid::bv
