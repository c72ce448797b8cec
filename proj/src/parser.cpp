#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "lexer.hpp"
#include "scid/ast.hpp"

namespace scid::frontend {

std::string_view op_text(UnaryOp op) {
  switch (op) {
    case UnaryOp::Neg: return "-";
    case UnaryOp::BitNot: return "~";
    case UnaryOp::LogNot: return "!";
  }
  return "?";
}

std::string_view op_text(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::BitAnd: return "&";
    case BinaryOp::BitOr: return "|";
    case BinaryOp::BitXor: return "^";
    case BinaryOp::Shl: return "<<";
    case BinaryOp::Shr: return ">>";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::LogAnd: return "&&";
    case BinaryOp::LogOr: return "||";
  }
  return "?";
}

Expr Expr::literal(std::uint64_t v) {
  Expr e;
  e.kind = Kind::Literal;
  e.value = v;
  return e;
}

Expr Expr::variable(std::string n) {
  Expr e;
  e.kind = Kind::Variable;
  e.name = std::move(n);
  return e;
}

Expr Expr::unary(UnaryOp op, Expr x) {
  Expr e;
  e.kind = Kind::Unary;
  e.unary_op = op;
  e.operands.push_back(std::move(x));
  return e;
}

Expr Expr::binary(BinaryOp op, Expr l, Expr r) {
  Expr e;
  e.kind = Kind::Binary;
  e.binary_op = op;
  e.operands.push_back(std::move(l));
  e.operands.push_back(std::move(r));
  return e;
}

Expr Expr::call(std::string callee, std::vector<Expr> args) {
  Expr e;
  e.kind = Kind::Call;
  e.name = std::move(callee);
  e.operands = std::move(args);
  return e;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::Literal: return a.value == b.value;
    case Expr::Kind::Variable: return a.name == b.name;
    case Expr::Kind::Unary: return a.unary_op == b.unary_op && a.operands == b.operands;
    case Expr::Kind::Binary: return a.binary_op == b.binary_op && a.operands == b.operands;
    case Expr::Kind::Call: return a.name == b.name && a.operands == b.operands;
  }
  return false;
}

bool operator==(const Stmt& a, const Stmt& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Stmt::Kind::Assign: return a.target == b.target && a.expr == b.expr;
    case Stmt::Kind::Call: return a.expr == b.expr;
    case Stmt::Kind::If: return a.expr == b.expr && a.body == b.body && a.else_body == b.else_body;
    case Stmt::Kind::While: return a.expr == b.expr && a.bound == b.bound && a.body == b.body;
    case Stmt::Kind::Return: return a.values == b.values;
    case Stmt::Kind::Break: return true;
  }
  return false;
}

bool operator==(const Function& a, const Function& b) {
  return a.name == b.name && a.params == b.params && a.body == b.body;
}

bool operator==(const Program& a, const Program& b) { return a.width == b.width && a.functions == b.functions; }

const Function* Program::find(std::string_view name) const {
  for (const Function& f : functions)
    if (f.name == name) return &f;
  return nullptr;
}

namespace {

void collect_calls(const std::vector<Stmt>& body, std::vector<const Expr*>& out) {
  for (const Stmt& s : body) {
    if (s.kind == Stmt::Kind::Call || (s.kind == Stmt::Kind::Assign && s.expr.kind == Expr::Kind::Call))
      out.push_back(&s.expr);
    collect_calls(s.body, out);
    collect_calls(s.else_body, out);
  }
}

void collect_returns(const std::vector<Stmt>& body, std::vector<const Stmt*>& out) {
  for (const Stmt& s : body) {
    if (s.kind == Stmt::Kind::Return) out.push_back(&s);
    collect_returns(s.body, out);
    collect_returns(s.else_body, out);
  }
}

}  // namespace

const Function& Program::entry() const {
  std::set<std::string> called;
  for (const Function& f : functions) {
    std::vector<const Expr*> calls;
    collect_calls(f.body, calls);
    for (const Expr* c : calls) called.insert(c->name);
  }
  const Function* found = nullptr;
  for (const Function& f : functions) {
    if (called.count(f.name)) continue;
    if (found) throw std::invalid_argument("program has more than one entry function");
    found = &f;
  }
  if (!found) throw std::invalid_argument("program has no entry function");
  return *found;
}

std::size_t Program::output_count() const {
  std::vector<const Stmt*> rets;
  collect_returns(entry().body, rets);
  std::size_t n = 0;
  for (const Stmt* r : rets) n = std::max(n, r->values.size());
  return n;
}

namespace {

class Parser {
public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program program() {
    Program p;
    if (at(Tok::KwWidth)) {
      next();
      const Token& w = expect(Tok::Int, "width value");
      if (w.value < 1 || w.value > 64) throw SyntaxError("width must be in [1, 64]", w.loc);
      p.width = static_cast<unsigned>(w.value);
      expect(Tok::Semi, "';'");
    }
    while (!at(Tok::End)) p.functions.push_back(function());
    if (p.functions.empty()) throw SyntaxError("program declares no functions", peek().loc);
    return p;
  }

private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int loop_depth_ = 0;

  const Token& peek(std::size_t off = 0) const { return toks_[std::min(pos_ + off, toks_.size() - 1)]; }
  bool at(Tok t) const { return peek().kind == t; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool accept(Tok t) {
    if (!at(t)) return false;
    next();
    return true;
  }
  const Token& expect(Tok t, std::string_view what) {
    if (!at(t)) {
      std::string got(tok_name(peek().kind));
      if (!peek().text.empty() && peek().kind != Tok::End) got = "'" + peek().text + "'";
      throw SyntaxError("expected " + std::string(what) + ", found " + got, peek().loc);
    }
    return next();
  }

  Function function() {
    Function f;
    f.loc = expect(Tok::KwFunc, "'func'").loc;
    f.name = expect(Tok::Ident, "function name").text;
    expect(Tok::LParen, "'('");
    if (!at(Tok::RParen)) {
      do {
        const Token& t = expect(Tok::Ident, "parameter name");
        for (const auto& q : f.params)
          if (q == t.text) throw SyntaxError("duplicate parameter '" + t.text + "'", t.loc);
        f.params.push_back(t.text);
      } while (accept(Tok::Comma));
    }
    expect(Tok::RParen, "')'");
    f.body = block();
    return f;
  }

  std::vector<Stmt> block() {
    expect(Tok::LBrace, "'{'");
    std::vector<Stmt> out;
    while (!at(Tok::RBrace)) {
      if (at(Tok::End)) throw SyntaxError("unterminated block", peek().loc);
      out.push_back(statement());
    }
    next();
    return out;
  }

  std::vector<Stmt> body() {
    if (at(Tok::LBrace)) return block();
    std::vector<Stmt> out;
    out.push_back(statement());
    return out;
  }

  Expr call_expr() {
    const Token& name = expect(Tok::Ident, "function name");
    std::vector<Expr> args;
    expect(Tok::LParen, "'('");
    if (!at(Tok::RParen)) {
      do args.push_back(expr());
      while (accept(Tok::Comma));
    }
    expect(Tok::RParen, "')'");
    Expr e = Expr::call(name.text, std::move(args));
    e.loc = name.loc;
    return e;
  }

  Stmt statement() {
    Stmt s;
    s.loc = peek().loc;
    switch (peek().kind) {
      case Tok::KwIf:
        next();
        s.kind = Stmt::Kind::If;
        expect(Tok::LParen, "'('");
        s.expr = expr();
        expect(Tok::RParen, "')'");
        s.body = body();
        if (accept(Tok::KwElse)) s.else_body = body();
        return s;
      case Tok::KwWhile: {
        next();
        s.kind = Stmt::Kind::While;
        expect(Tok::LParen, "'('");
        s.expr = expr();
        expect(Tok::RParen, "')'");
        if (!at(Tok::KwBound)) throw SyntaxError("while loop requires a 'bound N' annotation", peek().loc);
        next();
        const Token& b = expect(Tok::Int, "loop bound");
        if (b.value > 1'000'000) throw SyntaxError("loop bound too large", b.loc);
        s.bound = static_cast<std::uint32_t>(b.value);
        ++loop_depth_;
        s.body = body();
        --loop_depth_;
        return s;
      }
      case Tok::KwReturn:
        next();
        s.kind = Stmt::Kind::Return;
        if (!at(Tok::Semi)) {
          do s.values.push_back(expr());
          while (accept(Tok::Comma));
        }
        expect(Tok::Semi, "';'");
        return s;
      case Tok::KwBreak:
        if (loop_depth_ == 0) throw SyntaxError("'break' outside a loop", s.loc);
        next();
        s.kind = Stmt::Kind::Break;
        expect(Tok::Semi, "';'");
        return s;
      case Tok::Ident:
        if (peek(1).kind == Tok::LParen) {
          s.kind = Stmt::Kind::Call;
          s.expr = call_expr();
          expect(Tok::Semi, "';'");
          return s;
        }
        s.kind = Stmt::Kind::Assign;
        s.target = next().text;
        expect(Tok::Assign, "'='");
        if (at(Tok::Ident) && peek(1).kind == Tok::LParen) {
          s.expr = call_expr();
        } else {
          s.expr = expr();
        }
        expect(Tok::Semi, "';'");
        return s;
      default: expect(Tok::Ident, "statement"); return s;
    }
  }

  // Precedence climbing over the C binary-operator table.
  static int precedence(Tok t) {
    switch (t) {
      case Tok::OrOr: return 1;
      case Tok::AndAnd: return 2;
      case Tok::Pipe: return 3;
      case Tok::Caret: return 4;
      case Tok::Amp: return 5;
      case Tok::EqEq:
      case Tok::NotEq: return 6;
      case Tok::Lt:
      case Tok::Le:
      case Tok::Gt:
      case Tok::Ge: return 7;
      case Tok::Shl:
      case Tok::Shr: return 8;
      case Tok::Plus:
      case Tok::Minus: return 9;
      case Tok::Star: return 10;
      default: return 0;
    }
  }

  static BinaryOp binop(Tok t) {
    switch (t) {
      case Tok::OrOr: return BinaryOp::LogOr;
      case Tok::AndAnd: return BinaryOp::LogAnd;
      case Tok::Pipe: return BinaryOp::BitOr;
      case Tok::Caret: return BinaryOp::BitXor;
      case Tok::Amp: return BinaryOp::BitAnd;
      case Tok::EqEq: return BinaryOp::Eq;
      case Tok::NotEq: return BinaryOp::Ne;
      case Tok::Lt: return BinaryOp::Lt;
      case Tok::Le: return BinaryOp::Le;
      case Tok::Gt: return BinaryOp::Gt;
      case Tok::Ge: return BinaryOp::Ge;
      case Tok::Shl: return BinaryOp::Shl;
      case Tok::Shr: return BinaryOp::Shr;
      case Tok::Plus: return BinaryOp::Add;
      case Tok::Minus: return BinaryOp::Sub;
      default: return BinaryOp::Mul;
    }
  }

  Expr expr(int min_prec = 1) {
    Expr lhs = unary();
    for (;;) {
      const int p = precedence(peek().kind);
      if (p < min_prec || p == 0) return lhs;
      const Token& op = next();
      Expr rhs = expr(p + 1);
      const SourceLoc loc = lhs.loc;
      if ((op.kind == Tok::Shl || op.kind == Tok::Shr) && rhs.kind != Expr::Kind::Literal)
        throw SyntaxError("shift amount must be an integer literal", op.loc);
      lhs = Expr::binary(binop(op.kind), std::move(lhs), std::move(rhs));
      lhs.loc = loc;
    }
  }

  Expr unary() {
    const SourceLoc loc = peek().loc;
    std::optional<UnaryOp> op;
    if (at(Tok::Minus)) op = UnaryOp::Neg;
    else if (at(Tok::Tilde)) op = UnaryOp::BitNot;
    else if (at(Tok::Bang)) op = UnaryOp::LogNot;
    if (op) {
      next();
      Expr e = Expr::unary(*op, unary());
      e.loc = loc;
      return e;
    }
    return primary();
  }

  Expr primary() {
    const Token& t = peek();
    if (t.kind == Tok::Int) {
      next();
      Expr e = Expr::literal(t.value);
      e.loc = t.loc;
      return e;
    }
    if (t.kind == Tok::Ident) {
      if (peek(1).kind == Tok::LParen)
        throw SyntaxError("calls may only appear as a statement or as a whole right-hand side", t.loc);
      next();
      Expr e = Expr::variable(t.text);
      e.loc = t.loc;
      return e;
    }
    if (t.kind == Tok::LParen) {
      next();
      Expr e = expr();
      expect(Tok::RParen, "')'");
      return e;
    }
    expect(Tok::Int, "expression");
    return {};
  }
};

void check_shifts(const Expr& e, unsigned width) {
  if (e.kind == Expr::Kind::Binary && (e.binary_op == BinaryOp::Shl || e.binary_op == BinaryOp::Shr) &&
      e.operands[1].value >= width)
    throw SyntaxError("shift amount must be below the width " + std::to_string(width), e.operands[1].loc);
  for (const Expr& c : e.operands) check_shifts(c, width);
}

void check_body(const std::vector<Stmt>& body, unsigned width) {
  for (const Stmt& s : body) {
    check_shifts(s.expr, width);
    for (const Expr& v : s.values) check_shifts(v, width);
    check_body(s.body, width);
    check_body(s.else_body, width);
  }
}

void validate(const Program& p) {
  std::map<std::string, const Function*> by_name;
  for (const Function& f : p.functions)
    if (!by_name.emplace(f.name, &f).second) throw SyntaxError("duplicate function '" + f.name + "'", f.loc);

  std::map<std::string, std::vector<std::string>> graph;
  for (const Function& f : p.functions) {
    check_body(f.body, p.width);
    std::vector<const Expr*> calls;
    collect_calls(f.body, calls);
    for (const Expr* c : calls) {
      auto it = by_name.find(c->name);
      if (it == by_name.end()) throw SyntaxError("call to undefined function '" + c->name + "'", c->loc);
      if (it->second->params.size() != c->operands.size())
        throw SyntaxError("function '" + c->name + "' expects " + std::to_string(it->second->params.size()) +
                              " argument(s), got " + std::to_string(c->operands.size()),
                          c->loc);
      graph[f.name].push_back(c->name);
    }
  }

  // Cycle detection over the call graph.
  std::map<std::string, int> state;
  std::function<void(const Function&)> dfs = [&](const Function& f) {
    state[f.name] = 1;
    for (const auto& callee : graph[f.name]) {
      if (state[callee] == 1) throw SyntaxError("recursive call to '" + callee + "'", f.loc);
      if (state[callee] == 0) dfs(*by_name[callee]);
    }
    state[f.name] = 2;
  };
  for (const Function& f : p.functions)
    if (state[f.name] == 0) dfs(f);

  const Function* entry = nullptr;
  try {
    entry = &p.entry();
  } catch (const std::invalid_argument& e) {
    throw SyntaxError(e.what(), p.functions.front().loc);
  }
  for (const Function& f : p.functions) {
    std::vector<const Stmt*> rets;
    collect_returns(f.body, rets);
    std::optional<std::size_t> arity;
    for (const Stmt* r : rets) {
      if (&f != entry && r->values.size() > 1)
        throw SyntaxError("only the entry function may return several values", r->loc);
      if (&f == entry && !r->values.empty()) {
        if (arity && *arity != r->values.size())
          throw SyntaxError("inconsistent number of returned values", r->loc);
        arity = r->values.size();
      }
    }
  }
}

}  // namespace

Program parse(std::string_view source, const ParseOptions& options) {
  Parser parser(lex(source));
  Program p = parser.program();
  if (options.width) {
    if (*options.width < 1 || *options.width > 64) throw std::invalid_argument("width must be in [1, 64]");
    p.width = *options.width;
  }
  validate(p);
  return p;
}

Program parse_file(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse(ss.str(), options);
  } catch (const SyntaxError& e) {
    throw std::runtime_error(path + ":" + e.what());
  }
}

}  // namespace scid::frontend
