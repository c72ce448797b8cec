#include "scid/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace scid {

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot convert a non-finite double to a rational");
  int exp = 0;
  const double frac = std::frexp(x, &exp);
  // frac * 2^53 is an integer for every finite double.
  const auto mant = static_cast<long long>(std::ldexp(frac, 53));
  exp -= 53;
  Rational r(mant);
  if (exp >= 0) {
    r *= Rational(boost::multiprecision::cpp_int(1) << exp);
  } else {
    r /= Rational(boost::multiprecision::cpp_int(1) << -exp);
  }
  return r;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(s));
  return Rational(boost::multiprecision::cpp_int(s.substr(0, slash)),
                  boost::multiprecision::cpp_int(s.substr(slash + 1)));
}

RationalRow RowSpace::reduce(RationalRow row) const {
  if (row.size() != cols_) throw std::invalid_argument("row length does not match the column count");
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Rational f = row[pivots_[k]];
    if (f == 0) continue;
    for (std::size_t j = 0; j < cols_; ++j)
      if (rows_[k][j] != 0) row[j] -= f * rows_[k][j];
  }
  return row;
}

bool RowSpace::add(const RationalRow& row) {
  RationalRow r = reduce(row);
  std::size_t p = 0;
  while (p < cols_ && r[p] == 0) ++p;
  if (p == cols_) return false;
  const Rational lead = r[p];
  for (auto& x : r) x /= lead;
  // Keep earlier rows reduced against the new pivot.
  for (auto& old : rows_) {
    const Rational f = old[p];
    if (f == 0) continue;
    for (std::size_t j = 0; j < cols_; ++j)
      if (r[j] != 0) old[j] -= f * r[j];
  }
  rows_.push_back(std::move(r));
  pivots_.push_back(p);
  return true;
}

bool RowSpace::in_span(const RationalRow& row) const {
  const RationalRow r = reduce(row);
  for (const auto& x : r)
    if (x != 0) return false;
  return true;
}

std::size_t matrix_rank(const std::vector<RationalRow>& rows) {
  if (rows.empty()) return 0;
  RowSpace s(rows.front().size());
  for (const auto& r : rows) s.add(r);
  return s.rank();
}

std::optional<RationalRow> solve_combination(const std::vector<RationalRow>& rows, const RationalRow& target) {
  const std::size_t b = rows.size();
  const std::size_t m = target.size();
  // Columns of the augmented system are the rows; one equation per coordinate.
  std::vector<RationalRow> a(m, RationalRow(b + 1));
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < b; ++i) {
      if (rows[i].size() != m) throw std::invalid_argument("row length mismatch");
      a[j][i] = rows[i][j];
    }
    a[j][b] = target[j];
  }
  std::size_t r = 0;
  std::vector<std::size_t> pivot_row(b, SIZE_MAX);
  for (std::size_t c = 0; c < b && r < m; ++c) {
    std::size_t p = r;
    while (p < m && a[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[r]);
    const Rational lead = a[r][c];
    for (auto& x : a[r]) x /= lead;
    for (std::size_t k = 0; k < m; ++k) {
      if (k == r || a[k][c] == 0) continue;
      const Rational f = a[k][c];
      for (std::size_t j = c; j <= b; ++j) a[k][j] -= f * a[r][j];
    }
    pivot_row[c] = r++;
  }
  for (std::size_t k = r; k < m; ++k)
    if (a[k][b] != 0) return std::nullopt;
  RationalRow c(b);
  for (std::size_t i = 0; i < b; ++i) {
    if (pivot_row[i] == SIZE_MAX) throw std::invalid_argument("solve_combination: rows are linearly dependent");
    c[i] = a[pivot_row[i]][b];
  }
  return c;
}

}  // namespace scid
