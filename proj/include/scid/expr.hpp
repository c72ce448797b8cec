#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace scid::hybrid {

class ExprError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Real-valued expression: numbers, variables, + - * /, comparisons,
/// && || ! => and the functions exp sq sqrt abs min max. Booleans are 1/0.
class RealExpr {
public:
  RealExpr() = default;
  static RealExpr parse(std::string_view text);
  static RealExpr constant(double v);

  /// Resolves variable names to slot indices; throws on unknown names.
  void bind(const std::vector<std::string>& names);
  [[nodiscard]] double eval(std::span<const double> slots) const;

  [[nodiscard]] std::vector<std::string> free_variables() const;
  [[nodiscard]] const std::string& source() const { return source_; }

private:
  enum class Op { Num, Var, Neg, Not, Add, Sub, Mul, Div, Lt, Le, Gt, Ge, Eq, Ne, And, Or, Implies, Call };
  struct Node {
    Op op = Op::Num;
    double value = 0;
    std::string name;
    int slot = -1;
    std::vector<int> kids;
  };
  std::vector<Node> nodes_;
  int root_ = -1;
  std::string source_;
  bool bound_ = false;

  double eval_node(int i, std::span<const double> slots) const;
  friend class ExprParser;
};

}  // namespace scid::hybrid
