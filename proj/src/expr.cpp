#include "scid/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <set>

namespace scid::hybrid {

class ExprParser {
public:
  ExprParser(std::string_view text, RealExpr& out) : s_(text), e_(out) {}

  int parse_all() {
    const int r = implies();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return r;
  }

private:
  using Op = RealExpr::Op;
  std::string_view s_;
  RealExpr& e_;
  std::size_t i_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ExprError("expression '" + std::string(s_) + "' at offset " + std::to_string(i_) + ": " + msg);
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(i_, tok.size()) != tok) return false;
    i_ += tok.size();
    return true;
  }

  int add(Op op, std::vector<int> kids, double v = 0, std::string name = {}) {
    RealExpr::Node n;
    n.op = op;
    n.kids = std::move(kids);
    n.value = v;
    n.name = std::move(name);
    e_.nodes_.push_back(std::move(n));
    return static_cast<int>(e_.nodes_.size()) - 1;
  }

  int implies() {
    const int l = lor();
    if (eat("=>")) return add(Op::Implies, {l, implies()});
    return l;
  }

  int lor() {
    int l = land();
    while (eat("||")) l = add(Op::Or, {l, land()});
    return l;
  }

  int land() {
    int l = cmp();
    while (eat("&&")) l = add(Op::And, {l, cmp()});
    return l;
  }

  int cmp() {
    const int l = sum();
    skip();
    static const std::pair<std::string_view, Op> ops[] = {{"<=", Op::Le}, {">=", Op::Ge}, {"==", Op::Eq},
                                                            {"!=", Op::Ne}, {"<", Op::Lt},  {">", Op::Gt}};
    for (const auto& [tok, op] : ops) {
      if (s_.substr(i_, 2) == "=>") break;
      if (eat(tok)) return add(op, {l, sum()});
    }
    return l;
  }

  int sum() {
    int l = product();
    for (;;) {
      if (eat("+")) l = add(Op::Add, {l, product()});
      else if (eat("-")) l = add(Op::Sub, {l, product()});
      else return l;
    }
  }

  int product() {
    int l = unary();
    for (;;) {
      if (eat("*")) l = add(Op::Mul, {l, unary()});
      else if (eat("/")) l = add(Op::Div, {l, unary()});
      else return l;
    }
  }

  int unary() {
    if (eat("-")) return add(Op::Neg, {unary()});
    skip();
    if (i_ < s_.size() && s_[i_] == '!' && s_.substr(i_, 2) != "!=") {
      ++i_;
      return add(Op::Not, {unary()});
    }
    return primary();
  }

  int primary() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::string rest(s_.substr(i_));
      char* end = nullptr;
      const double v = std::strtod(rest.c_str(), &end);
      if (end == rest.c_str()) fail("malformed number");
      i_ += static_cast<std::size_t>(end - rest.c_str());
      return add(Op::Num, {}, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i_;
      while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
      std::string name(s_.substr(i_, j - i_));
      i_ = j;
      if (eat("(")) {
        static const std::set<std::string> fns{"exp", "sq", "sqrt", "abs", "min", "max"};
        if (!fns.count(name)) fail("unknown function '" + name + "'");
        std::vector<int> args;
        if (!eat(")")) {
          do args.push_back(implies());
          while (eat(","));
          if (!eat(")")) fail("expected ')'");
        }
        const std::size_t want = (name == "min" || name == "max") ? 2 : 1;
        if (args.size() != want) fail("'" + name + "' takes " + std::to_string(want) + " argument(s)");
        return add(Op::Call, std::move(args), 0, name);
      }
      return add(Op::Var, {}, 0, name);
    }
    if (eat("(")) {
      const int r = implies();
      if (!eat(")")) fail("expected ')'");
      return r;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

RealExpr RealExpr::parse(std::string_view text) {
  RealExpr e;
  e.source_ = std::string(text);
  ExprParser p(text, e);
  e.root_ = p.parse_all();
  return e;
}

RealExpr RealExpr::constant(double v) {
  RealExpr e;
  e.nodes_.push_back(Node{Op::Num, v, {}, -1, {}});
  e.root_ = 0;
  e.source_ = std::to_string(v);
  e.bound_ = true;
  return e;
}

void RealExpr::bind(const std::vector<std::string>& names) {
  for (auto& n : nodes_) {
    if (n.op != Op::Var) continue;
    auto it = std::find(names.begin(), names.end(), n.name);
    if (it == names.end()) throw ExprError("expression '" + source_ + "': unknown variable '" + n.name + "'");
    n.slot = static_cast<int>(it - names.begin());
  }
  bound_ = true;
}

std::vector<std::string> RealExpr::free_variables() const {
  std::set<std::string> s;
  for (const auto& n : nodes_)
    if (n.op == Op::Var) s.insert(n.name);
  return {s.begin(), s.end()};
}

double RealExpr::eval(std::span<const double> slots) const {
  if (root_ < 0) throw ExprError("evaluating an empty expression");
  if (!bound_) throw ExprError("expression '" + source_ + "' evaluated before binding");
  return eval_node(root_, slots);
}

double RealExpr::eval_node(int i, std::span<const double> slots) const {
  const Node& n = nodes_[static_cast<std::size_t>(i)];
  auto k = [&](std::size_t j) { return eval_node(n.kids[j], slots); };
  auto truth = [](double v) { return v != 0.0; };
  switch (n.op) {
    case Op::Num: return n.value;
    case Op::Var: return slots[static_cast<std::size_t>(n.slot)];
    case Op::Neg: return -k(0);
    case Op::Not: return truth(k(0)) ? 0.0 : 1.0;
    case Op::Add: return k(0) + k(1);
    case Op::Sub: return k(0) - k(1);
    case Op::Mul: return k(0) * k(1);
    case Op::Div: return k(0) / k(1);
    case Op::Lt: return k(0) < k(1) ? 1.0 : 0.0;
    case Op::Le: return k(0) <= k(1) ? 1.0 : 0.0;
    case Op::Gt: return k(0) > k(1) ? 1.0 : 0.0;
    case Op::Ge: return k(0) >= k(1) ? 1.0 : 0.0;
    case Op::Eq: return k(0) == k(1) ? 1.0 : 0.0;
    case Op::Ne: return k(0) != k(1) ? 1.0 : 0.0;
    case Op::And: return truth(k(0)) && truth(k(1)) ? 1.0 : 0.0;
    case Op::Or: return truth(k(0)) || truth(k(1)) ? 1.0 : 0.0;
    case Op::Implies: return !truth(k(0)) || truth(k(1)) ? 1.0 : 0.0;
    case Op::Call: {
      const double a = k(0);
      if (n.name == "exp") return std::exp(a);
      if (n.name == "sq") return a * a;
      if (n.name == "sqrt") return std::sqrt(a);
      if (n.name == "abs") return std::fabs(a);
      if (n.name == "min") return std::min(a, k(1));
      return std::max(a, k(1));
    }
  }
  return 0;
}

}  // namespace scid::hybrid
