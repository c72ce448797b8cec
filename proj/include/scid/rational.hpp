#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace scid {

using Rational = boost::multiprecision::cpp_rational;
using RationalRow = std::vector<Rational>;

/// Exact value of a finite double.
Rational rational_from_double(double x);
double to_double(const Rational& r);
/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);
Rational parse_rational(const std::string& s);

/// Incremental row echelon form over the rationals.
class RowSpace {
public:
  explicit RowSpace(std::size_t cols) : cols_(cols) {}

  /// Adds a row; returns true when it was independent of the rows so far.
  bool add(const RationalRow& row);
  [[nodiscard]] bool in_span(const RationalRow& row) const;
  [[nodiscard]] std::size_t rank() const { return rows_.size(); }
  [[nodiscard]] std::size_t cols() const { return cols_; }

private:
  std::size_t cols_;
  std::vector<RationalRow> rows_;  // reduced, pivot entry 1
  std::vector<std::size_t> pivots_;

  [[nodiscard]] RationalRow reduce(RationalRow row) const;
};

std::size_t matrix_rank(const std::vector<RationalRow>& rows);

/// Coefficients c with sum c[i] * rows[i] == target, or nullopt when target is
/// outside the row span. Rows must be linearly independent.
std::optional<RationalRow> solve_combination(const std::vector<RationalRow>& rows, const RationalRow& target);

}  // namespace scid
