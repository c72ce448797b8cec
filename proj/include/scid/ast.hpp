#pragma once

// The `.mc` source language: a small unsigned fixed-width imperative
// language with bounded loops and non-recursive calls.
//
//   program  := "width" INT ";" function+
//   function := "func" IDENT "(" [IDENT ("," IDENT)*] ")" block
//   stmt     := IDENT "=" expr ";"            (rhs may be a single call)
//             | IDENT "(" args ")" ";"
//             | "if" "(" expr ")" body ["else" body]
//             | "while" "(" expr ")" "bound" INT body
//             | "return" [expr ("," expr)*] ";"
//             | "break" ";"
//   body     := block | stmt
//
// Expressions use C precedence and unsigned semantics modulo 2^width.
// Shift amounts must be integer literals below the width.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace scid::frontend {

struct SourceLoc {
  int line = 0;
  int column = 0;
};

class SyntaxError : public std::runtime_error {
public:
  SyntaxError(const std::string& msg, SourceLoc loc)
      : std::runtime_error(std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " + msg), loc_(loc) {}
  [[nodiscard]] SourceLoc loc() const { return loc_; }

private:
  SourceLoc loc_;
};

enum class UnaryOp { Neg, BitNot, LogNot };
enum class BinaryOp { Add, Sub, Mul, BitAnd, BitOr, BitXor, Shl, Shr, Eq, Ne, Lt, Le, Gt, Ge, LogAnd, LogOr };

std::string_view op_text(UnaryOp op);
std::string_view op_text(BinaryOp op);

struct Expr {
  enum class Kind { Literal, Variable, Unary, Binary, Call };

  Kind kind = Kind::Literal;
  std::uint64_t value = 0;  // Literal
  std::string name;         // Variable or callee
  UnaryOp unary_op = UnaryOp::Neg;
  BinaryOp binary_op = BinaryOp::Add;
  std::vector<Expr> operands;  // Unary: 1, Binary: 2, Call: arguments
  SourceLoc loc;

  static Expr literal(std::uint64_t v);
  static Expr variable(std::string n);
  static Expr unary(UnaryOp op, Expr e);
  static Expr binary(BinaryOp op, Expr l, Expr r);
  static Expr call(std::string callee, std::vector<Expr> args);

  /// Structural equality; source locations are ignored.
  friend bool operator==(const Expr& a, const Expr& b);
};

struct Stmt {
  enum class Kind { Assign, Call, If, While, Return, Break };

  Kind kind = Kind::Assign;
  std::string target;              // Assign
  Expr expr;                       // Assign rhs, Call, If/While condition
  std::vector<Stmt> body;          // If then-branch, While body
  std::vector<Stmt> else_body;     // If
  std::uint32_t bound = 0;         // While
  std::vector<Expr> values;        // Return
  SourceLoc loc;

  friend bool operator==(const Stmt& a, const Stmt& b);
};

struct Function {
  std::string name;
  std::vector<std::string> params;
  std::vector<Stmt> body;
  SourceLoc loc;

  friend bool operator==(const Function& a, const Function& b);
};

struct Program {
  unsigned width = 8;
  std::vector<Function> functions;

  [[nodiscard]] const Function* find(std::string_view name) const;
  /// The unique function no other function calls.
  [[nodiscard]] const Function& entry() const;
  /// Number of values the entry function returns (0 when it never returns a value).
  [[nodiscard]] std::size_t output_count() const;

  friend bool operator==(const Program& a, const Program& b);
};

struct ParseOptions {
  /// Replaces the width declared in the source.
  std::optional<unsigned> width;
};

/// Parses and validates: unique entry, acyclic call graph, arity-correct
/// calls, bounded loops, consistent return arity in the entry function.
Program parse(std::string_view source, const ParseOptions& options = {});
Program parse_file(const std::string& path, const ParseOptions& options = {});

std::string print(const Program& p);
std::string print(const Expr& e);

/// Reference semantics: runs the entry function. Loop bounds are hard caps.
std::vector<std::uint64_t> interpret(const Program& p, std::span<const std::uint64_t> inputs);

}  // namespace scid::frontend
