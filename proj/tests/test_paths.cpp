#include <doctest.h>

#include <algorithm>
#include <set>

#include "scid/ast.hpp"
#include "scid/cfg.hpp"
#include "scid/paths.hpp"
#include "support/random_programs.hpp"

using namespace scid;
using namespace scid::paths;
using frontend::build_dag;
using frontend::parse;

namespace {

const std::string kBench = SCID_BENCHMARK_DIR;

Cfg load(const std::string& name) { return build_dag(frontend::parse_file(kBench + "/" + name)); }

// Paths actually followed by some input, found by running every input.
std::set<PathVector> followed_paths(const Cfg& cfg) {
  std::set<PathVector> out;
  const std::size_t k = cfg.inputs.size();
  const std::uint64_t per = std::uint64_t{1} << cfg.width;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= per;
  std::vector<std::uint64_t> in(k);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (auto& v : in) {
      v = c % per;
      c /= per;
    }
    out.insert(PathVector::from_edges(cfg.num_edges(), frontend::walk(cfg, in).edges));
  }
  return out;
}

// Rank by plain Gaussian elimination over doubles; exact for these small 0/1 matrices.
std::size_t float_rank(std::vector<std::vector<double>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && std::abs(m[piv][c]) < 1e-9) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank) continue;
      const double f = m[r][c] / m[rank][c];
      for (std::size_t j = 0; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

std::vector<double> as_doubles(const PathVector& p) { return {p.bits.begin(), p.bits.end()}; }

std::vector<int> combine(const BasisSet& b, const RationalRow& c) {
  std::vector<int> sum(b.paths[0].size(), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    REQUIRE(denominator(c[i]) == 1);
    const int ci = static_cast<int>(numerator(c[i]));
    for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += ci * b.paths[i].bits[j];
  }
  return sum;
}

}  // namespace

TEST_CASE("path_to_formula: straight line has no branch constraints and is SAT") {
  const Cfg cfg = build_dag(parse("width 8; func f(x) { x = x + 1; return x; }"));
  const auto all = enumerate_paths(cfg);
  REQUIRE(all.size() == 1);
  CHECK(bv::solve(path_to_formula(cfg, all[0])).sat());
  CHECK(feasible_test(cfg, all[0]).has_value());
}

TEST_CASE("path_to_formula: contradictory then-then path is UNSAT") {
  const Cfg cfg = build_dag(parse(
      "width 8; func f(x) { y = 0; if (x < 2) { y = 1; } if (x > 5) { y = y + 2; } return y; }"));
  const auto followed = followed_paths(cfg);
  const auto all = enumerate_paths(cfg);
  REQUIRE(all.size() == 4);
  std::size_t unsat = 0;
  for (const auto& p : all) {
    const bool sat = bv::solve(path_to_formula(cfg, p)).sat();
    CHECK(sat == followed.contains(p));
    if (!sat) ++unsat;
  }
  CHECK(unsat == 1);
  CHECK(followed.size() == 3);
}

TEST_CASE("path_to_formula: modexp all-multiply path needs exponent 255") {
  const Cfg cfg = load("modexp.mc");
  const std::uint64_t in[] = {3, 255};
  const PathVector all_mul = PathVector::from_edges(cfg.num_edges(), frontend::walk(cfg, in).edges);
  const auto t = feasible_test(cfg, all_mul);
  REQUIRE(t.has_value());
  CHECK((*t)[1] == 255);
  for (std::uint64_t e = 0; e < 256; ++e) {
    const std::uint64_t x[] = {7, e};
    const auto p = PathVector::from_edges(cfg.num_edges(), frontend::walk(cfg, x).edges);
    CHECK((p == all_mul) == (e == 255));
  }
}

TEST_CASE("flow conservation holds on every enumerated path") {
  for (const char* name : {"modexp.mc", "fig4.mc", "interchange_obs.mc", "multiply45_obs.mc"}) {
    const Cfg cfg = load(name);
    for (const auto& p : enumerate_paths(cfg)) {
      REQUIRE(flow_conserving(cfg, p));
      const auto seq = edge_sequence(cfg, p);
      CHECK(cfg.edges[seq.front()].from == cfg.source);
      CHECK(cfg.edges[seq.back()].to == cfg.sink);
      for (std::size_t i = 1; i < seq.size(); ++i) CHECK(cfg.edges[seq[i - 1]].to == cfg.edges[seq[i]].from);
    }
  }
  const Cfg cfg = load("fig4.mc");
  PathVector bogus(cfg.num_edges());
  bogus.bits[0] = 1;
  CHECK_FALSE(flow_conserving(cfg, bogus));
}

TEST_CASE("extract_feasible_basis: diamond and single path") {
  const Cfg d = load("fig4.mc");
  const BasisSet b = extract_feasible_basis(d);
  CHECK(b.size() == 2);
  std::vector<std::vector<double>> all;
  for (const auto& p : enumerate_paths(d)) all.push_back(as_doubles(p));
  CHECK(float_rank(all) == 2);
  check_basis(d, b);

  const Cfg s = build_dag(parse("width 8; func f(x) { x = x * 3; return x; }"));
  const BasisSet one = extract_feasible_basis(s);
  CHECK(one.size() == 1);
  CHECK(one.tests.size() == 1);
}

TEST_CASE("extract_feasible_basis: modexp gives 9 replayable basis paths") {
  const Cfg cfg = load("modexp.mc");
  const BasisSet b = extract_feasible_basis(cfg);
  CHECK(b.size() == 9);
  REQUIRE(b.tests.size() == 9);
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto p = PathVector::from_edges(cfg.num_edges(), frontend::walk(cfg, b.tests[i]).edges);
    CHECK(p == b.paths[i]);
  }
  std::vector<std::vector<double>> rows;
  for (const auto& p : b.paths) rows.push_back(as_doubles(p));
  CHECK(float_rank(rows) == 9);
  CHECK(matrix_rank(b.lengths_matrix()) == 9);
  for (const auto& p : enumerate_paths(cfg)) {
    const auto c = express_in_basis(b, p);
    REQUIRE(c.has_value());
    const auto sum = combine(b, *c);
    for (std::size_t j = 0; j < sum.size(); ++j) REQUIRE(sum[j] == p.bits[j]);
  }
}

TEST_CASE("express_in_basis: unit vectors, minus-one pattern, outside the span") {
  const Cfg cfg = build_dag(parse(
      "width 8; func f(x) { y = 0; if (x & 1) { y = 1; } else { y = 2; } if (x & 2) { y = y + 3; } else { y = y + 4; } return y; }"));
  const BasisSet b = extract_feasible_basis(cfg);
  REQUIRE(b.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    const auto c = express_in_basis(b, b.paths[k]);
    REQUIRE(c.has_value());
    for (std::size_t i = 0; i < 3; ++i) CHECK((*c)[i] == (i == k ? 1 : 0));
  }
  const auto all = enumerate_paths(cfg);
  REQUIRE(all.size() == 4);
  const auto fourth = std::find_if(all.begin(), all.end(), [&](const PathVector& p) {
    return std::find(b.paths.begin(), b.paths.end(), p) == b.paths.end();
  });
  REQUIRE(fourth != all.end());
  const auto c = express_in_basis(b, *fourth);
  REQUIRE(c.has_value());
  std::vector<int> coeffs;
  for (const auto& x : *c) coeffs.push_back(static_cast<int>(numerator(x)));
  std::sort(coeffs.begin(), coeffs.end());
  CHECK(coeffs == std::vector<int>{-1, 1, 1});
  const auto sum = combine(b, *c);
  for (std::size_t j = 0; j < sum.size(); ++j) CHECK(sum[j] == fourth->bits[j]);

  // The then-branch can never run, so its path is outside the feasible span.
  const Cfg dead = build_dag(parse("width 8; func f(x) { y = 0; if (x < 0) { y = 1; } return y; }"));
  const BasisSet db = extract_feasible_basis(dead);
  CHECK(db.size() == 1);
  std::size_t outside = 0;
  for (const auto& p : enumerate_paths(dead)) {
    std::vector<std::vector<double>> rows{as_doubles(db.paths[0]), as_doubles(p)};
    const bool independent = float_rank(rows) == 2;
    CHECK(express_in_basis(db, p).has_value() == !independent);
    if (independent) ++outside;
  }
  CHECK(outside == 1);
}

TEST_CASE("basis invariants on random programs") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    testing::RandomPrograms gen(seed * 101, 3);
    const Cfg cfg = build_dag(parse(gen.program(4)));
    if (cfg.path_count() > 1024) continue;
    const BasisSet b = extract_feasible_basis(cfg);
    check_basis(cfg, b);
    CHECK(b.size() <= cfg.cyclomatic_bound());
    const auto feasible = followed_paths(cfg);
    std::vector<std::vector<double>> rows;
    for (const auto& p : feasible) rows.push_back(as_doubles(p));
    CHECK(float_rank(rows) == b.size());
    for (const auto& p : feasible) {
      const auto c = express_in_basis(b, p);
      REQUIRE(c.has_value());
      const auto s = combine(b, *c);
      for (std::size_t j = 0; j < s.size(); ++j) REQUIRE(s[j] == p.bits[j]);
    }
  }
}

TEST_CASE("path enumeration budget") {
  const Cfg cfg = load("modexp.mc");
  CHECK_THROWS_AS(enumerate_paths(cfg, 100), PathBudgetExceeded);
  std::size_t seen = 0;
  for_each_path(cfg, [&](const PathVector&) { return ++seen < 10; });
  CHECK(seen == 10);
}
