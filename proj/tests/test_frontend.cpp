#include <doctest.h>

#include <set>

#include "scid/ast.hpp"
#include "scid/cfg.hpp"
#include "scid/paths.hpp"
#include "support/random_programs.hpp"

using namespace scid;
using namespace scid::frontend;

namespace {

const std::string kBench = SCID_BENCHMARK_DIR;

// Counts source-to-sink paths by plain recursion, no memoisation.
std::uint64_t brute_paths(const Cfg& cfg, std::size_t node) {
  if (node == cfg.sink) return 1;
  std::uint64_t n = 0;
  for (const auto& e : cfg.edges)
    if (e.from == node) n += brute_paths(cfg, e.to);
  return n;
}

}  // namespace

TEST_CASE("parse: bundled modexp has one loop of bound 8") {
  const Program p = parse_file(kBench + "/modexp.mc");
  CHECK(p.width == 8);
  REQUIRE(p.functions.size() == 1);
  const Function& f = p.entry();
  CHECK(f.name == "modexp");
  CHECK(f.params == std::vector<std::string>{"base", "exponent"});
  int loops = 0;
  for (const Stmt& s : f.body)
    if (s.kind == Stmt::Kind::While) {
      ++loops;
      CHECK(s.bound == 8);
    }
  CHECK(loops == 1);
  CHECK(p.output_count() == 1);
}

TEST_CASE("parse: errors carry line and column") {
  SUBCASE("while without bound") {
    try {
      parse("width 8;\nfunc f(x) {\n  while (x) { x = x - 1; }\n}\n");
      FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
      CHECK(e.loc().line == 3);
      CHECK(e.loc().column > 0);
    }
  }
  SUBCASE("break outside a loop") { CHECK_THROWS_AS(parse("width 8; func f(x) { break; }"), SyntaxError); }
  SUBCASE("recursion") { CHECK_THROWS_AS(parse("width 8; func f(x) { g(x); } func g(y) { g(y); }"), SyntaxError); }
  SUBCASE("undefined callee") { CHECK_THROWS_AS(parse("width 8; func f(x) { y = g(x); }"), SyntaxError); }
  SUBCASE("shift by a variable") { CHECK_THROWS_AS(parse("width 8; func f(x) { x = x << x; }"), SyntaxError); }
  SUBCASE("shift at the width") { CHECK_THROWS_AS(parse("width 4; func f(x) { x = x << 4; }"), SyntaxError); }
  SUBCASE("missing semicolon") { CHECK_THROWS_AS(parse("width 8; func f(x) { x = 1 }"), SyntaxError); }
}

TEST_CASE("build_dag: empty body is a single source-to-sink edge") {
  const Cfg cfg = build_dag(parse("width 8; func f(x) { }"));
  CHECK(cfg.num_nodes() == 2);
  REQUIRE(cfg.num_edges() == 1);
  CHECK(cfg.edges[0].from == cfg.source);
  CHECK(cfg.edges[0].to == cfg.sink);
  CHECK(cfg.path_count() == 1);
}

TEST_CASE("build_dag: straight-line program is a single path") {
  const Cfg cfg = build_dag(parse("width 8; func f(x) { x = x + 1; y = x * 3; x = y ^ x; return x; }"));
  check_dag(cfg);
  CHECK(cfg.path_count() == 1);
  CHECK(cfg.num_edges() == cfg.num_nodes() - 1);
  const std::uint64_t in[] = {5};
  CHECK(walk(cfg, in).outputs == std::vector<std::uint64_t>{((6 * 3) ^ 6) & 0xff});
}

TEST_CASE("build_dag: loop running at most once unrolls to a diamond") {
  const Cfg cfg = build_dag(parse_file(kBench + "/fig4.mc"));
  check_dag(cfg);
  CHECK(cfg.path_count() == 2);
  CHECK(cfg.num_nodes() == 4);
  CHECK(cfg.num_edges() == 4);
  CHECK(brute_paths(cfg, cfg.source) == 2);
  const std::uint64_t taken[] = {0, 3}, skipped[] = {1, 3};
  CHECK(walk(cfg, taken).outputs == std::vector<std::uint64_t>{6});
  CHECK(walk(cfg, skipped).outputs == std::vector<std::uint64_t>{5});
}

TEST_CASE("build_dag: modexp has 256 paths") {
  const Cfg cfg = build_dag(parse_file(kBench + "/modexp.mc"));
  check_dag(cfg);
  CHECK(cfg.path_count() == 256);
  CHECK(brute_paths(cfg, cfg.source) == 256);
  CHECK(cfg.cyclomatic_bound() == 9);
  // Topological ids: every edge goes forward.
  for (const auto& e : cfg.edges) CHECK(e.from < e.to);
}

TEST_CASE("build_dag: sequential branches multiply the path count") {
  for (int k = 1; k <= 10; ++k) {
    std::string src = "width 8; func f(x) { y = 0;";
    for (int i = 0; i < k; ++i) src += " if (x & " + std::to_string(1 << (i % 8)) + ") { y = y + 1; }";
    src += " return y; }";
    const Cfg cfg = build_dag(parse(src));
    CHECK(cfg.path_count() == (std::uint64_t{1} << k));
    CHECK(brute_paths(cfg, cfg.source) == (std::uint64_t{1} << k));
  }
}

TEST_CASE("build_dag: calls are inlined") {
  const Program p = parse(
      "width 8;\n"
      "func sq(v) { return v * v; }\n"
      "func main(x) { y = sq(x); z = sq(y + 1); return z; }\n");
  const Cfg cfg = build_dag(p);
  check_dag(cfg);
  CHECK(cfg.inputs == std::vector<std::string>{"x"});
  for (std::uint64_t x = 0; x < 256; ++x) {
    const std::uint64_t in[] = {x};
    const std::uint64_t y = (x * x) & 0xff;
    REQUIRE(walk(cfg, in).outputs == std::vector<std::uint64_t>{((y + 1) * (y + 1)) & 0xff});
  }
}

TEST_CASE("build_dag: node budget") {
  BuildOptions o;
  o.node_budget = 8;
  CHECK_THROWS_AS(build_dag(parse_file(kBench + "/modexp.mc"), o), BuildError);
}

TEST_CASE("interpret: bundled programs") {
  const Program m = parse_file(kBench + "/modexp.mc");
  for (std::uint64_t b = 0; b < 256; b += 7)
    for (std::uint64_t e = 0; e < 256; e += 5) {
      std::uint64_t r = 1;
      for (std::uint64_t i = 0; i < e; ++i) r = (r * b) & 0xff;
      const std::uint64_t in[] = {b, e};
      REQUIRE(interpret(m, in) == std::vector<std::uint64_t>{r});
    }
  const Program x = parse_file(kBench + "/interchange_obs.mc");
  for (std::uint64_t a = 0; a < 256; a += 3)
    for (std::uint64_t b = 0; b < 256; b += 11) {
      const std::uint64_t in[] = {a, b};
      REQUIRE(interpret(x, in) == std::vector<std::uint64_t>{b, a});
    }
  const Program y = parse_file(kBench + "/multiply45_obs.mc");
  for (std::uint64_t v = 0; v < 256; ++v) {
    const std::uint64_t in[] = {v};
    REQUIRE(interpret(y, in) == std::vector<std::uint64_t>{(45 * v) & 0xff});
  }
}

TEST_CASE("walk over the DAG agrees with the interpreter on random programs") {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    testing::RandomPrograms gen(seed);
    const std::string src = gen.program(4);
    const Program p = parse(src);
    const Cfg cfg = build_dag(p);
    check_dag(cfg);
    for (std::uint64_t a = 0; a < 16; ++a)
      for (std::uint64_t b = 0; b < 16; b += 5) {
        const std::uint64_t in[] = {a, b};
        REQUIRE_MESSAGE(walk(cfg, in).outputs == interpret(p, in), src);
      }
  }
}

TEST_CASE("path count equals brute-force enumeration on random programs") {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    testing::RandomPrograms gen(seed * 17);
    const Cfg cfg = build_dag(parse(gen.program(5)));
    const std::uint64_t n = cfg.path_count();
    if (n > (1u << 16)) continue;
    CHECK(brute_paths(cfg, cfg.source) == n);
    CHECK(paths::enumerate_paths(cfg).size() == n);
  }
}

TEST_CASE("print then parse round-trips") {
  for (const char* name : {"/modexp.mc", "/fig4.mc", "/interchange_obs.mc", "/multiply45_obs.mc"}) {
    const Program p = parse_file(kBench + name);
    CHECK(parse(print(p)) == p);
  }
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    testing::RandomPrograms gen(seed * 3);
    const Program p = parse(gen.program(6));
    const std::string text = print(p);
    REQUIRE_MESSAGE(parse(text) == p, text);
    CHECK(print(parse(text)) == text);
  }
}

TEST_CASE("width override") {
  ParseOptions o;
  o.width = 4;
  const Program p = parse_file(kBench + "/modexp.mc", o);
  CHECK(p.width == 4);
  CHECK_THROWS(parse("width 90; func f(x) { }"));
}

TEST_CASE("dot output names every edge") {
  const Cfg cfg = build_dag(parse_file(kBench + "/fig4.mc"));
  const std::string dot = cfg.to_dot();
  CHECK(dot.rfind("digraph", 0) == 0);
  std::size_t arrows = 0;
  for (std::size_t i = dot.find("->"); i != std::string::npos; i = dot.find("->", i + 2)) ++arrows;
  CHECK(arrows == cfg.num_edges());
}
