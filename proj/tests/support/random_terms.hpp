#pragma once

// Seeded random bit-vector formulas and a brute-force enumeration oracle
// that shares no code with the library's evaluator.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "scid/bitvec.hpp"

namespace scid::testing {

class RandomTerms {
public:
  RandomTerms(std::uint64_t seed, unsigned width, std::vector<std::string> vars)
      : rng_(seed), width_(width), vars_(std::move(vars)) {}

  bv::Term value(int depth) {
    if (depth <= 0 || pick(5) == 0) return leaf();
    switch (pick(11)) {
      case 0: return value(depth - 1) + value(depth - 1);
      case 1: return value(depth - 1) - value(depth - 1);
      case 2: return value(depth - 1) & value(depth - 1);
      case 3: return value(depth - 1) | value(depth - 1);
      case 4: return value(depth - 1) ^ value(depth - 1);
      case 5: return ~value(depth - 1);
      case 6: return bv::shl(value(depth - 1), static_cast<unsigned>(pick(width_)));
      case 7: return bv::lshr(value(depth - 1), static_cast<unsigned>(pick(width_)));
      case 8: return bv::ite(boolean(depth - 1), value(depth - 1), value(depth - 1));
      case 9: return value(depth - 1) * value(depth - 1);
      default: return leaf();
    }
  }

  bv::Term boolean(int depth) {
    if (depth <= 1) return atom(1);
    switch (pick(6)) {
      case 0: return boolean(depth - 1) & boolean(depth - 1);
      case 1: return boolean(depth - 1) | boolean(depth - 1);
      case 2: return ~boolean(depth - 1);
      default: return atom(depth - 1);
    }
  }

  bv::Formula formula(int depth, int assertions) {
    bv::Formula f;
    for (int i = 0; i < assertions; ++i) f.add(boolean(depth));
    return f;
  }

private:
  bv::Term atom(int depth) {
    switch (pick(3)) {
      case 0: return bv::eq(value(depth), value(depth));
      case 1: return bv::ult(value(depth), value(depth));
      default: return bv::ule(value(depth), value(depth));
    }
  }

  bv::Term leaf() {
    if (pick(3) == 0) return bv::constant(rng_() & bv::mask(width_), width_);
    return bv::var(vars_[static_cast<std::size_t>(pick(static_cast<unsigned>(vars_.size())))], width_);
  }

  unsigned pick(unsigned n) { return static_cast<unsigned>(rng_() % n); }

  std::mt19937_64 rng_;
  unsigned width_;
  std::vector<std::string> vars_;
};

// Direct recursive evaluation over a positional assignment.
inline std::uint64_t oracle_eval(const bv::Term& t, const std::vector<std::string>& names,
                                 const std::vector<std::uint64_t>& values) {
  const std::uint64_t m = bv::mask(t.width());
  auto c = [&](std::size_t i) { return oracle_eval(t.child(i), names, values); };
  switch (t.kind()) {
    case bv::Kind::Const: return t.value();
    case bv::Kind::Var:
      for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == t.name()) return values[i] & m;
      return 0;
    case bv::Kind::Add: return (c(0) + c(1)) & m;
    case bv::Kind::Sub: return (c(0) + (~c(1) & m) + 1) & m;
    case bv::Kind::Mul: {
      std::uint64_t a = c(0), b = c(1), r = 0;
      for (unsigned i = 0; i < t.width(); ++i)
        if ((b >> i) & 1U) r += a << i;
      return r & m;
    }
    case bv::Kind::And: return c(0) & c(1);
    case bv::Kind::Or: return c(0) | c(1);
    case bv::Kind::Xor: return c(0) ^ c(1);
    case bv::Kind::Not: return ~c(0) & m;
    case bv::Kind::Shl: return (c(0) << t.shift_amount()) & m;
    case bv::Kind::Lshr: return c(0) >> t.shift_amount();
    case bv::Kind::Ite: return c(0) ? c(1) : c(2);
    case bv::Kind::Eq: return c(0) == c(1);
    case bv::Kind::Ult: return c(0) < c(1);
    case bv::Kind::Ule: return c(0) <= c(1);
  }
  return 0;
}

/// True iff some assignment to `names` (each `width` bits) satisfies `f`.
inline bool brute_force_sat(const bv::Formula& f, const std::vector<std::string>& names, unsigned width) {
  const std::size_t n = names.size();
  const std::uint64_t per = std::uint64_t{1} << width;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= per;
  std::vector<std::uint64_t> vals(n);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t rest = code;
    for (std::size_t i = 0; i < n; ++i) {
      vals[i] = rest % per;
      rest /= per;
    }
    bool all = true;
    for (const auto& a : f.assertions)
      if (oracle_eval(a, names, vals) != 1) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

}  // namespace scid::testing
