#include <map>

#include "scid/ast.hpp"
#include "scid/bitvec.hpp"

namespace scid::frontend {

namespace {

enum class Flow { Normal, Break, Return };

class Interpreter {
public:
  explicit Interpreter(const Program& p) : p_(p), mask_(bv::mask(p.width)) {}

  std::vector<std::uint64_t> call(const Function& f, std::span<const std::uint64_t> args) {
    Frame frame;
    for (std::size_t i = 0; i < f.params.size(); ++i) frame.vars[f.params[i]] = args[i] & mask_;
    if (exec(f.body, frame) != Flow::Return) frame.ret.clear();
    return frame.ret;
  }

private:
  struct Frame {
    std::map<std::string, std::uint64_t, std::less<>> vars;
    std::vector<std::uint64_t> ret;
  };

  const Program& p_;
  std::uint64_t mask_;

  std::uint64_t eval(const Expr& e, Frame& f) {
    switch (e.kind) {
      case Expr::Kind::Literal: return e.value & mask_;
      case Expr::Kind::Variable: {
        auto it = f.vars.find(e.name);
        return it == f.vars.end() ? 0 : it->second;
      }
      case Expr::Kind::Unary: {
        const std::uint64_t v = eval(e.operands[0], f);
        switch (e.unary_op) {
          case UnaryOp::Neg: return (0 - v) & mask_;
          case UnaryOp::BitNot: return ~v & mask_;
          case UnaryOp::LogNot: return v == 0 ? 1 : 0;
        }
        return 0;
      }
      case Expr::Kind::Binary: {
        const std::uint64_t a = eval(e.operands[0], f);
        const std::uint64_t b = eval(e.operands[1], f);
        switch (e.binary_op) {
          case BinaryOp::Add: return (a + b) & mask_;
          case BinaryOp::Sub: return (a - b) & mask_;
          case BinaryOp::Mul: return (a * b) & mask_;
          case BinaryOp::BitAnd: return a & b;
          case BinaryOp::BitOr: return a | b;
          case BinaryOp::BitXor: return a ^ b;
          case BinaryOp::Shl: return (a << e.operands[1].value) & mask_;
          case BinaryOp::Shr: return a >> e.operands[1].value;
          case BinaryOp::Eq: return a == b;
          case BinaryOp::Ne: return a != b;
          case BinaryOp::Lt: return a < b;
          case BinaryOp::Le: return a <= b;
          case BinaryOp::Gt: return a > b;
          case BinaryOp::Ge: return a >= b;
          case BinaryOp::LogAnd: return a != 0 && b != 0;
          case BinaryOp::LogOr: return a != 0 || b != 0;
        }
        return 0;
      }
      case Expr::Kind::Call: {
        std::vector<std::uint64_t> args;
        for (const Expr& a : e.operands) args.push_back(eval(a, f));
        const auto r = call(*p_.find(e.name), args);
        return r.empty() ? 0 : r.front();
      }
    }
    return 0;
  }

  Flow exec(const std::vector<Stmt>& body, Frame& f) {
    for (const Stmt& s : body) {
      const Flow flow = exec(s, f);
      if (flow != Flow::Normal) return flow;
    }
    return Flow::Normal;
  }

  Flow exec(const Stmt& s, Frame& f) {
    switch (s.kind) {
      case Stmt::Kind::Assign: f.vars[s.target] = eval(s.expr, f); return Flow::Normal;
      case Stmt::Kind::Call: eval(s.expr, f); return Flow::Normal;
      case Stmt::Kind::If: return exec(eval(s.expr, f) != 0 ? s.body : s.else_body, f);
      case Stmt::Kind::While:
        for (std::uint32_t k = 0; k < s.bound && eval(s.expr, f) != 0; ++k) {
          const Flow flow = exec(s.body, f);
          if (flow == Flow::Break) break;
          if (flow == Flow::Return) return flow;
        }
        return Flow::Normal;
      case Stmt::Kind::Return:
        f.ret.clear();
        for (const Expr& v : s.values) f.ret.push_back(eval(v, f));
        return Flow::Return;
      case Stmt::Kind::Break: return Flow::Break;
    }
    return Flow::Normal;
  }
};

}  // namespace

std::vector<std::uint64_t> interpret(const Program& p, std::span<const std::uint64_t> inputs) {
  const Function& entry = p.entry();
  if (inputs.size() != entry.params.size())
    throw std::invalid_argument("entry function '" + entry.name + "' expects " + std::to_string(entry.params.size()) +
                                " input(s), got " + std::to_string(inputs.size()));
  Interpreter in(p);
  auto out = in.call(entry, inputs);
  out.resize(p.output_count(), 0);
  return out;
}

}  // namespace scid::frontend
