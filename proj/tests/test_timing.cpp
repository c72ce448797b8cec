#include <doctest.h>

#include <cmath>
#include <map>

#include "scid/ast.hpp"
#include "scid/cfg.hpp"
#include "scid/paths.hpp"
#include "scid/timing.hpp"

using namespace scid;
using namespace scid::timing;
using frontend::build_dag;
using frontend::parse;

namespace {

const std::string kBench = SCID_BENCHMARK_DIR;

frontend::Cfg modexp() { return build_dag(frontend::parse_file(kBench + "/modexp.mc")); }

PlatformModel zero_platform(const frontend::Cfg& cfg) {
  PlatformModel pm;
  pm.weights = auto_weights(cfg);
  pm.law = Law::Zero;
  pm.noise = 0;
  return pm;
}

// w.p summed edge by edge.
Rational direct_time(const std::vector<Rational>& w, const PathVector& p) {
  Rational t = 0;
  for (std::size_t e = 0; e < p.size(); ++e)
    if (p.bits[e] == 1) t += w[e];
  return t;
}

PathVector path_of(const frontend::Cfg& cfg, std::initializer_list<std::uint64_t> in) {
  const std::vector<std::uint64_t> v(in);
  return PathVector::from_edges(cfg.num_edges(), frontend::walk(cfg, v).edges);
}

}  // namespace

TEST_CASE("measure: zero law is w.p exactly; a single edge of weight 7 takes 7") {
  const auto cfg = build_dag(parse("width 8; func f(x) { }"));
  PlatformModel pm;
  pm.weights = {Rational(7)};
  const auto p = paths::enumerate_paths(cfg).at(0);
  for (std::uint64_t t = 0; t < 10; ++t) CHECK(measure(pm, p, t) == 7);

  const auto m = modexp();
  const auto zp = zero_platform(m);
  for (const auto& q : paths::enumerate_paths(m)) REQUIRE(measure(zp, q, 3) == direct_time(zp.weights, q));
}

TEST_CASE("measure: deterministic in (seed, trial) and varying across trials") {
  const auto m = modexp();
  PlatformModel pm = zero_platform(m);
  pm.law = Law::Uniform;
  pm.noise = 1;
  pm.seed = 11;
  const auto p = path_of(m, {3, 255});
  CHECK(measure(pm, p, 5) == measure(pm, p, 5));
  CHECK(measure(pm, p, 5) != measure(pm, p, 6));
}

TEST_CASE("measure: Monte Carlo mean stays within mu_max of w.p for every law") {
  const auto m = modexp();
  const PathVector paths_to_try[] = {path_of(m, {3, 255}), path_of(m, {3, 0}), path_of(m, {3, 0x5a})};
  for (Law law : {Law::Zero, Law::Uniform, Law::CacheLike}) {
    PlatformModel pm = zero_platform(m);
    pm.law = law;
    pm.noise = law == Law::Zero ? 0 : 1;
    pm.mu_max = 2;
    pm.seed = 99;
    pm.marked_edges = {0, 3, 6, 9, 12, 15, 18, 21};
    for (const auto& p : paths_to_try) {
      constexpr int N = 10000;
      double sum = 0;
      for (int t = 0; t < N; ++t) sum += to_double(measure(pm, p, static_cast<std::uint64_t>(t)));
      const double mean = sum / N;
      const double nominal = to_double(direct_time(pm.weights, p));
      const double sd = std::sqrt(static_cast<double>(p.edges().size()) / 3.0) / std::sqrt(double(N));
      CHECK(std::abs(mean - nominal) <= pm.mu_max + 5 * sd);
      CHECK(std::abs(mean - to_double(pm.expected_time(p))) <= 5 * sd + 1e-12);
      CHECK(std::abs(to_double(pm.mean_perturbation(p))) <= pm.mu_max);
    }
  }
}

TEST_CASE("run_trials: round robin, uniform frequency and determinism") {
  const auto m = modexp();
  const auto basis = paths::extract_feasible_basis(m);
  const auto pm = zero_platform(m);
  const std::size_t b = basis.size();

  const auto rr = run_trials(pm, basis, b, 1, TrialOptions{true});
  REQUIRE(rr.trials.size() == b);
  for (std::size_t i = 0; i < b; ++i) CHECK(rr.trials[i].index == i);

  constexpr std::size_t N = 10000;
  const auto log = run_trials(pm, basis, N, 7);
  REQUIRE(log.trials.size() == N);
  std::vector<std::size_t> freq(b, 0);
  for (const auto& t : log.trials) {
    REQUIRE(t.index < b);
    CHECK(t.time >= 0);
    ++freq[t.index];
  }
  const double pr = 1.0 / double(b);
  const double sigma = std::sqrt(N * pr * (1 - pr));
  for (auto f : freq) CHECK(std::abs(double(f) - N * pr) <= 5 * sigma);

  const auto again = run_trials(pm, basis, N, 7);
  for (std::size_t i = 0; i < N; ++i) {
    REQUIRE(again.trials[i].index == log.trials[i].index);
    REQUIRE(again.trials[i].time == log.trials[i].time);
  }
  CHECK_THROWS_AS(run_trials(pm, basis, b - 1, 7), std::invalid_argument);
}

TEST_CASE("trial_count schedule") {
  CHECK(trial_count(9, 0.05) == static_cast<std::size_t>(std::ceil(20.0 * 9 * std::log(1 / 0.05))));
  CHECK(trial_count(9, 0.05) == 540);
  CHECK(trial_count(1, 0.5, 1.0) == 1);
  CHECK_THROWS(trial_count(3, 0));
  CHECK_THROWS(trial_count(3, 1));
}

TEST_CASE("fit_predictor: sample means") {
  paths::BasisSet one;
  one.paths.push_back(PathVector(1));
  MeasurementLog log;
  log.trials = {{0, Rational(10)}, {0, Rational(12)}};
  CHECK(fit_predictor(one, log) == std::vector<Rational>{Rational(11)});

  paths::BasisSet two = one;
  two.paths.push_back(PathVector(1));
  try {
    fit_predictor(two, log);
    FAIL("expected an error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("basis path 1") != std::string::npos);
  }
}

TEST_CASE("fit_predictor: noiseless means are w.b exactly") {
  const auto m = modexp();
  const auto basis = paths::extract_feasible_basis(m);
  const auto pm = zero_platform(m);
  const auto lengths = fit_predictor(basis, run_trials(pm, basis, 200, 3));
  for (std::size_t i = 0; i < basis.size(); ++i) CHECK(lengths[i] == direct_time(pm.weights, basis.paths[i]));
}

TEST_CASE("fit_predictor: bounded symmetric noise keeps means within mu_max over 100 seeds") {
  const auto m = modexp();
  const auto basis = paths::extract_feasible_basis(m);
  PlatformModel pm = zero_platform(m);
  pm.law = Law::CacheLike;
  pm.mu_max = 2;
  pm.noise = 1;
  pm.marked_edges = {0, 3, 6, 9, 12, 15, 18, 21};
  double worst = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    pm.seed = seed;
    const auto lengths = fit_predictor(basis, run_trials(pm, basis, 540, seed));
    for (std::size_t i = 0; i < basis.size(); ++i)
      worst = std::max(worst, std::abs(to_double(lengths[i] - direct_time(pm.weights, basis.paths[i]))));
  }
  // 60 samples per path on average; the noise half-width per path is at most 17 edges.
  CHECK(worst <= pm.mu_max + 3.0);
}

TEST_CASE("predict_time: noiseless exactness and linearity") {
  const auto m = modexp();
  const auto basis = paths::extract_feasible_basis(m);
  const auto pm = zero_platform(m);
  const auto lengths = fit_predictor(basis, run_trials(pm, basis, 100, 1));
  for (std::size_t k = 0; k < basis.size(); ++k) CHECK(predict_time(basis, lengths, basis.paths[k]) == lengths[k]);
  for (const auto& p : paths::enumerate_paths(m)) REQUIRE(predict_time(basis, lengths, p) == direct_time(pm.weights, p));

  // Under noise, prediction stays linear across two independent branch choices.
  PlatformModel noisy = pm;
  noisy.law = Law::Uniform;
  noisy.noise = 1;
  noisy.seed = 5;
  const auto nl = fit_predictor(basis, run_trials(noisy, basis, 540, 2));
  const auto p00 = path_of(m, {3, 0b00}), p01 = path_of(m, {3, 0b01}), p10 = path_of(m, {3, 0b10}),
             p11 = path_of(m, {3, 0b11});
  CHECK(predict_time(basis, nl, p01) + predict_time(basis, nl, p10) ==
        predict_time(basis, nl, p11) + predict_time(basis, nl, p00));
}

TEST_CASE("predict_time: outside the span") {
  const auto cfg = build_dag(parse("width 8; func f(x) { y = 0; if (x < 0) { y = 1; } return y; }"));
  const auto basis = paths::extract_feasible_basis(cfg);
  PlatformModel pm;
  pm.weights.assign(cfg.num_edges(), Rational(1));
  const auto lengths = fit_predictor(basis, run_trials(pm, basis, 1, 0));
  bool threw = false;
  for (const auto& p : paths::enumerate_paths(cfg))
    if (!paths::express_in_basis(basis, p)) {
      CHECK_THROWS_AS(predict_time(basis, lengths, p), NotInSpan);
      threw = true;
    }
  CHECK(threw);
}

TEST_CASE("find_worst_case: single path, modexp and a weighted three-path DAG") {
  {
    const auto cfg = build_dag(parse("width 8; func f(x) { x = x + 1; return x; }"));
    const auto basis = paths::extract_feasible_basis(cfg);
    PlatformModel pm = zero_platform(cfg);
    const auto wc = find_worst_case(cfg, basis, fit_predictor(basis, run_trials(pm, basis, 1, 0)));
    CHECK(wc.path == paths::enumerate_paths(cfg).at(0));
  }
  {
    const auto m = modexp();
    const auto basis = paths::extract_feasible_basis(m);
    const auto pm = zero_platform(m);
    const auto wc = find_worst_case(m, basis, fit_predictor(basis, run_trials(pm, basis, 100, 1)));
    CHECK(wc.test[1] == 255);
    CHECK(wc.path == path_of(m, {0, 255}));
  }
  {
    const auto cfg = build_dag(parse(
        "width 8; func f(x) { if (x < 10) { y = 1; } else { if (x < 20) { y = 2; } else { y = 3; } } return y; }"));
    REQUIRE(cfg.path_count() == 3);
    const auto basis = paths::extract_feasible_basis(cfg);
    for (std::uint64_t s = 1; s <= 20; ++s) {
      PlatformModel pm;
      for (std::size_t e = 0; e < cfg.num_edges(); ++e) pm.weights.emplace_back(static_cast<long>((s * 7 + e * 13) % 23));
      const auto all = paths::enumerate_paths(cfg);
      Rational best = -1;
      for (const auto& p : all) best = std::max(best, direct_time(pm.weights, p));
      const auto wc = find_worst_case(cfg, basis, fit_predictor(basis, run_trials(pm, basis, 30, s)));
      CHECK(direct_time(pm.weights, wc.path) == best);
      CHECK(wc.predicted == best);
    }
  }
}

TEST_CASE("answer_ta: unbounded tau, tau* - 1 and determinism") {
  const auto m = modexp();
  const auto pm = zero_platform(m);
  Rational tstar = 0;
  for (const auto& p : paths::enumerate_paths(m)) tstar = std::max(tstar, direct_time(pm.weights, p));

  TaOptions o;
  o.seed = 4;
  const auto yes = answer_ta(m, pm, std::nullopt, 0.05, o);
  CHECK(yes.answer == Answer::Yes);
  CHECK_FALSE(yes.witness_test.has_value());
  CHECK(yes.tau_star == tstar);
  CHECK(yes.n_trials == 540);

  const auto no = answer_ta(m, pm, tstar - 1, 0.05, o);
  CHECK(no.answer == Answer::No);
  REQUIRE(no.witness_test.has_value());
  CHECK((*no.witness_test)[1] == 255);
  CHECK(answer_ta(m, pm, tstar, 0.05, o).answer == Answer::Yes);

  PlatformModel noisy = pm;
  noisy.law = Law::Uniform;
  noisy.noise = 1;
  noisy.seed = 8;
  const auto a = answer_ta(m, noisy, tstar, 0.05, o);
  const auto b = answer_ta(m, noisy, tstar, 0.05, o);
  CHECK(a.tau_star == b.tau_star);
  CHECK(a.lengths == b.lengths);
  CHECK(a.worst_path == b.worst_path);
  CHECK(a.answer == b.answer);
  CHECK_THROWS_AS(answer_ta(m, pm, Rational(-1), 0.05, o), std::invalid_argument);
}

TEST_CASE("path_distribution: 256 rows, exact under the zero law") {
  const auto m = modexp();
  const auto basis = paths::extract_feasible_basis(m);
  const auto pm = zero_platform(m);
  const auto lengths = fit_predictor(basis, run_trials(pm, basis, 100, 1));
  const auto rows = path_distribution(m, pm, basis, lengths);
  CHECK(rows.size() == 256);
  for (const auto& r : rows) CHECK(r.predicted == r.actual);
}

TEST_CASE("platform JSON") {
  const auto m = modexp();
  const auto pm = load_platform(kBench + "/cachelike.json", m);
  CHECK(pm.law == Law::CacheLike);
  CHECK(pm.mu_max == 2);
  CHECK(pm.rho == 25);
  CHECK(pm.weights == auto_weights(m));
  CHECK(pm.marked_edges.size() == 8);
  CHECK_THROWS_AS(parse_platform(R"({"weights": [1, 2], "law": "zero"})", m), std::invalid_argument);
  CHECK_THROWS_AS(parse_platform(R"({"weights": "auto", "law": "gaussian"})", m), std::invalid_argument);
  CHECK_THROWS_AS(parse_platform("{", m), std::invalid_argument);
  CHECK(parse_law("uniform") == Law::Uniform);
  CHECK(law_name(Law::CacheLike) == "cachelike");
}
