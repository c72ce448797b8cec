#pragma once

#include <random>
#include <sstream>
#include <string>

namespace scid::testing {

/// Random `.mc` source over inputs a, b with nested ifs, bounded loops and a helper call.
class RandomPrograms {
public:
  RandomPrograms(std::uint64_t seed, unsigned width = 4) : rng_(seed), width_(width) {}

  std::string program(int statements = 5) {
    loop_ = 0;
    std::ostringstream os;
    os << "width " << width_ << ";\n";
    const bool helper = pick(2) == 0;
    if (helper) os << "func h(p, q) {\n  r = p ^ q;\n  if (r < 3) { r = r + 1; }\n  return r;\n}\n";
    os << "func main(a, b) {\n  t = 0;\n";
    for (int i = 0; i < statements; ++i) stmt(os, 1, 2, helper);
    if (helper) os << "  t = h(t, b);\n";
    os << "  return a, t;\n}\n";
    return os.str();
  }

private:
  std::mt19937_64 rng_;
  unsigned width_;
  int loop_ = 0;

  unsigned pick(unsigned n) { return static_cast<unsigned>(rng_() % n); }

  std::string var() {
    static const char* names[] = {"a", "b", "t"};
    return names[pick(3)];
  }

  std::string expr(int depth) {
    if (depth == 0 || pick(3) == 0) {
      if (pick(2) == 0) return var();
      return std::to_string(pick(1u << width_));
    }
    switch (pick(7)) {
      case 0: return "(" + expr(depth - 1) + " + " + expr(depth - 1) + ")";
      case 1: return "(" + expr(depth - 1) + " - " + expr(depth - 1) + ")";
      case 2: return "(" + expr(depth - 1) + " & " + expr(depth - 1) + ")";
      case 3: return "(" + expr(depth - 1) + " ^ " + expr(depth - 1) + ")";
      case 4: return "(" + expr(depth - 1) + " * " + expr(depth - 1) + ")";
      case 5: return "(" + expr(depth - 1) + " << " + std::to_string(pick(width_)) + ")";
      default: return "~" + expr(depth - 1);
    }
  }

  std::string cond() {
    static const char* ops[] = {"<", "<=", "==", "!=", ">", ">="};
    std::string c = expr(1) + " " + ops[pick(6)] + " " + expr(1);
    if (pick(4) == 0) c = "(" + c + ") && (" + var() + " != 0)";
    return c;
  }

  void stmt(std::ostringstream& os, int indent, int depth, bool helper) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const unsigned k = depth > 0 ? pick(5) : 0;
    if (k == 1) {
      os << pad << "if (" << cond() << ") {\n";
      stmt(os, indent + 1, depth - 1, helper);
      os << pad << "}";
      if (pick(2) == 0) {
        os << " else {\n";
        stmt(os, indent + 1, depth - 1, helper);
        os << pad << "}";
      }
      os << "\n";
    } else if (k == 2) {
      const std::string i = "i" + std::to_string(loop_++);
      os << pad << i << " = 0;\n";
      os << pad << "while (" << i << " < " << (1 + pick(3)) << ") bound " << (1 + pick(3)) << " {\n";
      stmt(os, indent + 1, depth - 1, helper);
      if (pick(3) == 0) os << pad << "  if (t == 1) break;\n";
      os << pad << "  " << i << " = " << i << " + 1;\n";
      os << pad << "}\n";
    } else if (k == 3 && helper) {
      os << pad << var() << " = h(" << expr(1) << ", " << var() << ");\n";
    } else {
      os << pad << var() << " = " << expr(2) << ";\n";
    }
  }
};

}  // namespace scid::testing
