#include "scid/timing.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "scid/random.hpp"

namespace scid::timing {

std::string_view law_name(Law l) {
  switch (l) {
    case Law::Zero: return "zero";
    case Law::Uniform: return "uniform";
    case Law::CacheLike: return "cachelike";
  }
  return "?";
}

Law parse_law(std::string_view s) {
  if (s == "zero") return Law::Zero;
  if (s == "uniform") return Law::Uniform;
  if (s == "cachelike") return Law::CacheLike;
  throw std::invalid_argument("unknown perturbation law '" + std::string(s) + "' (expected zero|uniform|cachelike)");
}

namespace {

std::optional<std::size_t> first_marked(const PlatformModel& pm, const PathVector& p) {
  std::optional<std::size_t> best;
  for (std::size_t e : pm.marked_edges)
    if (e < p.size() && p.bits[e] && (!best || e < *best)) best = e;
  return best;
}

}  // namespace

Rational PlatformModel::mean_perturbation(const PathVector& p) const {
  if (law == Law::CacheLike && first_marked(*this, p)) return rational_from_double(mu_max);
  return 0;
}

Rational PlatformModel::nominal(const PathVector& p) const {
  if (p.size() != weights.size()) throw std::invalid_argument("path length does not match the weight vector");
  Rational t = 0;
  for (std::size_t e = 0; e < p.size(); ++e)
    if (p.bits[e]) t += weights[e];
  return t;
}

void PlatformModel::validate(std::size_t num_edges) const {
  if (weights.size() != num_edges)
    throw std::invalid_argument("platform has " + std::to_string(weights.size()) + " weights but the program has " +
                                std::to_string(num_edges) + " edges");
  for (const auto& w : weights)
    if (w < 0) throw std::invalid_argument("platform weights must be nonnegative");
  if (!(mu_max >= 0) || !(rho >= 0) || !(noise >= 0)) throw std::invalid_argument("mu_max, rho and noise must be >= 0");
  for (auto e : marked_edges)
    if (e >= num_edges) throw std::invalid_argument("marked edge out of range");
}

std::vector<Rational> auto_weights(const frontend::Cfg& cfg) {
  std::vector<Rational> w;
  for (const auto& e : cfg.edges) {
    std::int64_t cost = 1;
    for (const auto& a : cfg.nodes[e.to].assignments) {
      cost += 1;
      std::unordered_map<const void*, bool> seen;
      std::function<void(const bv::Term&)> count = [&](const bv::Term& t) {
        if (!seen.emplace(t.id(), true).second) return;
        if (t.kind() == bv::Kind::Mul) cost += 8;
        for (const auto& c : t.children()) count(c);
      };
      count(a.value);
    }
    w.emplace_back(cost);
  }
  return w;
}

PlatformModel parse_platform(const std::string& text, const frontend::Cfg& cfg) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("platform JSON: ") + e.what());
  }
  PlatformModel pm;
  try {
    const auto& w = j.at("weights");
    if (w.is_string()) {
      if (w.get<std::string>() != "auto") throw std::invalid_argument("platform weights must be a list or \"auto\"");
      pm.weights = auto_weights(cfg);
    } else {
      for (const auto& x : w) pm.weights.push_back(rational_from_double(x.get<double>()));
    }
    pm.law = parse_law(j.value("law", std::string("zero")));
    pm.mu_max = j.value("mu_max", 0.0);
    pm.rho = j.value("rho", 0.0);
    pm.noise = j.value("noise", pm.law == Law::Zero ? 0.0 : 1.0);
    if (j.contains("marked_edges")) pm.marked_edges = j.at("marked_edges").get<std::vector<std::size_t>>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("platform JSON: ") + e.what());
  }
  pm.validate(cfg.num_edges());
  return pm;
}

PlatformModel load_platform(const std::string& path, const frontend::Cfg& cfg) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_platform(ss.str(), cfg);
}

Rational measure(const PlatformModel& pm, const PathVector& p, std::uint64_t trial) {
  Rational t = pm.nominal(p);
  if (pm.law == Law::Zero) return t;
  Rng rng(derive_seed(pm.seed, "measure", trial));
  double pi = 0;
  for (std::size_t e = 0; e < p.size(); ++e)
    if (p.bits[e] && pm.noise > 0) pi += rng.uniform(-pm.noise, pm.noise);
  if (pm.law == Law::CacheLike && first_marked(pm, p)) pi += pm.mu_max;
  t += rational_from_double(pi);
  return t < 0 ? Rational(0) : t;
}

Rational execute(const PlatformModel& pm, const frontend::Cfg& cfg, const Test& test, std::uint64_t trial) {
  const auto ex = frontend::walk(cfg, test);
  return measure(pm, PathVector::from_edges(cfg.num_edges(), ex.edges), trial);
}

MeasurementLog run_trials(const PlatformModel& pm, const BasisSet& basis, std::size_t n_trials, std::uint64_t seed,
                          const TrialOptions& options) {
  if (basis.size() == 0) throw std::invalid_argument("run_trials: empty basis");
  if (n_trials < basis.size()) throw std::invalid_argument("run_trials: need at least one trial per basis path");
  MeasurementLog log;
  Rng rng(derive_seed(seed, "trials"));
  for (std::size_t t = 0; t < n_trials; ++t) {
    const std::size_t i = options.round_robin ? t % basis.size() : static_cast<std::size_t>(rng.below(basis.size()));
    log.trials.push_back(Trial{i, measure(pm, basis.paths[i], t)});
  }
  return log;
}

std::size_t trial_count(std::size_t b, double delta, double factor) {
  if (!(delta > 0 && delta < 1)) throw std::invalid_argument("delta must lie in (0, 1)");
  const double n = std::ceil(factor * static_cast<double>(b) * std::log(1.0 / delta));
  return std::max(b, static_cast<std::size_t>(n));
}

std::vector<Rational> fit_predictor(const BasisSet& basis, const MeasurementLog& log) {
  std::vector<Rational> sum(basis.size(), 0);
  std::vector<std::size_t> count(basis.size(), 0);
  for (const auto& t : log.trials) {
    if (t.index >= basis.size()) throw std::invalid_argument("trial index out of range");
    sum[t.index] += t.time;
    ++count[t.index];
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (count[i] == 0) throw std::invalid_argument("basis path " + std::to_string(i) + " was never measured");
    sum[i] /= count[i];
  }
  return sum;
}

Rational predict_time(const BasisSet& basis, const std::vector<Rational>& lengths, const PathVector& p) {
  const auto c = paths::express_in_basis(basis, p);
  if (!c) throw NotInSpan("path " + p.to_string() + " is not in the span of the basis");
  Rational t = 0;
  for (std::size_t i = 0; i < c->size(); ++i) t += (*c)[i] * lengths[i];
  return t;
}

WorstCase find_worst_case(const frontend::Cfg& cfg, const BasisSet& basis, const std::vector<Rational>& lengths,
                          const SearchOptions& options) {
  const auto all = paths::enumerate_paths(cfg, options.path_budget);
  struct Scored {
    std::size_t id;
    Rational t;
  };
  std::vector<Scored> scored;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto c = paths::express_in_basis(basis, all[i]);
    if (!c) {
      if (paths::feasible_test(cfg, all[i], options.solver))
        throw std::logic_error("feasible path " + all[i].to_string() + " lies outside the basis span");
      continue;
    }
    Rational t = 0;
    for (std::size_t k = 0; k < c->size(); ++k) t += (*c)[k] * lengths[k];
    scored.push_back({i, t});
  }
  // Enumeration order is lexicographic in edge ids; stable sort keeps it for ties.
  std::stable_sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) { return a.t > b.t; });
  for (const auto& s : scored) {
    if (auto test = paths::feasible_test(cfg, all[s.id], options.solver)) return WorstCase{all[s.id], *test, s.t};
  }
  throw std::logic_error("no feasible path found");
}

TimingVerdict answer_ta(const frontend::Cfg& cfg, const PlatformModel& pm, std::optional<Rational> tau, double delta,
                        const TaOptions& options) {
  if (tau && *tau < 0) throw std::invalid_argument("tau must be nonnegative");
  pm.validate(cfg.num_edges());
  TimingVerdict v;
  v.tau = tau;
  v.basis = paths::extract_feasible_basis(cfg, options.basis);
  v.n_trials = trial_count(v.basis.size(), delta, options.trial_factor);
  v.log = run_trials(pm, v.basis, v.n_trials, derive_seed(options.seed, "trials"), TrialOptions{options.round_robin});
  v.lengths = fit_predictor(v.basis, v.log);
  const WorstCase wc = find_worst_case(cfg, v.basis, v.lengths, options.search);
  v.worst_path = wc.path;
  v.predicted = wc.predicted;
  v.tau_star = execute(pm, cfg, wc.test, v.n_trials);
  v.answer = (!tau || v.tau_star <= *tau) ? Answer::Yes : Answer::No;
  if (v.answer == Answer::No) v.witness_test = wc.test;
  return v;
}

std::vector<PathTiming> path_distribution(const frontend::Cfg& cfg, const PlatformModel& pm, const BasisSet& basis,
                                          const std::vector<Rational>& lengths, const SearchOptions& options) {
  std::vector<PathTiming> out;
  const auto all = paths::enumerate_paths(cfg, options.path_budget);
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto c = paths::express_in_basis(basis, all[i]);
    if (!c) continue;
    if (!paths::feasible_test(cfg, all[i], options.solver)) continue;
    Rational t = 0;
    for (std::size_t k = 0; k < c->size(); ++k) t += (*c)[k] * lengths[k];
    out.push_back(PathTiming{i, all[i], t, measure(pm, all[i], (std::uint64_t{1} << 40) + i)});
  }
  return out;
}

}  // namespace scid::timing
