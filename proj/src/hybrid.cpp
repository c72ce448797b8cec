#include "scid/hybrid.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace scid::hybrid {

namespace {

int grid_decimals(double grid) {
  int d = 0;
  double g = grid;
  while (d < 9 && std::fabs(g - std::round(g)) > 1e-9) {
    g *= 10;
    ++d;
  }
  return d;
}

std::string fmt(double v, int decimals) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(decimals) << v;
  return os.str();
}

bool all_finite(std::span<const double> s) {
  return std::all_of(s.begin(), s.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

Guard Guard::unconstrained(std::size_t n) { return Guard{std::vector<std::optional<GridInterval>>(n), false}; }

Guard Guard::none(std::size_t n) { return Guard{std::vector<std::optional<GridInterval>>(n), true}; }

bool Guard::contains(std::span<const double> state, double grid) const {
  if (empty) return false;
  for (std::size_t d = 0; d < dims.size(); ++d) {
    if (!dims[d]) continue;
    if (!std::isfinite(state[d])) return false;
    const long long k = std::llround(state[d] / grid);
    if (k < dims[d]->lo || k > dims[d]->hi) return false;
  }
  return true;
}

bool Guard::subset_of(const Guard& other) const {
  if (empty) return true;
  if (other.empty) return false;
  for (std::size_t d = 0; d < dims.size(); ++d) {
    if (!other.dims[d]) continue;
    if (!dims[d]) return false;
    if (dims[d]->lo < other.dims[d]->lo || dims[d]->hi > other.dims[d]->hi) return false;
  }
  return true;
}

std::uint64_t Guard::point_count() const {
  if (empty) return 0;
  std::uint64_t n = 1;
  for (const auto& d : dims) {
    if (!d) continue;
    const auto len = static_cast<std::uint64_t>(d->hi - d->lo + 1);
    n = (len != 0 && n > UINT64_MAX / len) ? UINT64_MAX : n * len;
  }
  return n;
}

std::string Guard::to_string(const std::vector<Variable>& vars, double grid) const {
  if (empty) return "false";
  const int dec = grid_decimals(grid);
  std::string out;
  for (std::size_t d = 0; d < dims.size(); ++d) {
    if (!dims[d]) continue;
    if (!out.empty()) out += " && ";
    const std::string& v = vars[d].name;
    const double lo = static_cast<double>(dims[d]->lo) * grid;
    const double hi = static_cast<double>(dims[d]->hi) * grid;
    if (dims[d]->lo == dims[d]->hi) out += v + " = " + fmt(lo, dec);
    else out += fmt(lo, dec) + " <= " + v + " <= " + fmt(hi, dec);
  }
  return out.empty() ? "true" : out;
}

void Guard::validate() const {
  for (const auto& d : dims)
    if (d && d->lo > d->hi) throw std::invalid_argument("guard interval with lo > hi");
}

void SimConfig::validate() const {
  if (!(step > 0) || !std::isfinite(step)) throw std::invalid_argument("step size must be positive");
  if (!(dwell >= 0)) throw std::invalid_argument("dwell time must be non-negative");
  if (!(horizon > dwell)) throw std::invalid_argument("horizon must exceed the dwell time");
  if (!(grid > 0) || !std::isfinite(grid)) throw std::invalid_argument("grid step must be positive");
}

void Mds::finalize() {
  if (vars.empty()) throw std::invalid_argument(name + ": no state variables");
  std::vector<std::string> var_names;
  for (const auto& v : vars) {
    if (v.name.empty()) throw std::invalid_argument(name + ": unnamed variable");
    if (std::find(var_names.begin(), var_names.end(), v.name) != var_names.end())
      throw std::invalid_argument(name + ": duplicate variable '" + v.name + "'");
    var_names.push_back(v.name);
  }
  if (modes.empty()) throw std::invalid_argument(name + ": no modes");
  std::set<std::string> mode_names;
  spec_by_mode.clear();
  for (auto& m : modes) {
    if (!mode_names.insert(m.name).second) throw std::invalid_argument(name + ": duplicate mode '" + m.name + "'");
    if (m.rhs.size() != vars.size())
      throw std::invalid_argument(name + ": mode '" + m.name + "' needs one right-hand side per variable");
    // Order definitions so each depends only on earlier ones.
    std::vector<Definition> ordered;
    std::set<std::string> done(var_names.begin(), var_names.end());
    std::set<std::string> def_names;
    for (const auto& d : m.defs) {
      if (done.count(d.name) || !def_names.insert(d.name).second)
        throw std::invalid_argument(name + ": mode '" + m.name + "' redefines '" + d.name + "'");
    }
    std::vector<Definition> pending = m.defs;
    while (!pending.empty()) {
      auto it = std::find_if(pending.begin(), pending.end(), [&](const Definition& d) {
        for (const auto& fv : d.expr.free_variables())
          if (!done.count(fv) && def_names.count(fv)) return false;
        return true;
      });
      if (it == pending.end())
        throw std::invalid_argument(name + ": cyclic definitions in mode '" + m.name + "'");
      done.insert(it->name);
      ordered.push_back(std::move(*it));
      pending.erase(it);
    }
    m.defs = std::move(ordered);
    std::vector<std::string> env = var_names;
    for (auto& d : m.defs) {
      d.expr.bind(env);
      env.push_back(d.name);
    }
    for (auto& r : m.rhs) r.bind(env);
    RealExpr s = spec;
    s.bind(env);
    spec_by_mode.push_back(std::move(s));
  }
  for (const auto& t : transitions) {
    if (t.from >= modes.size() || t.to >= modes.size())
      throw std::invalid_argument(name + ": transition '" + t.name + "' names an unknown mode");
    if (!t.initial.empty() && t.initial.size() != vars.size())
      throw std::invalid_argument(name + ": transition '" + t.name + "' guard has the wrong dimension");
    for (const auto& iv : t.initial)
      if (iv && !(iv->lo <= iv->hi))
        throw std::invalid_argument(name + ": transition '" + t.name + "' has an interval with lo > hi");
  }
  if (initial_mode >= modes.size()) throw std::invalid_argument(name + ": unknown initial mode");
  if (initial_state.size() != vars.size()) throw std::invalid_argument(name + ": initial state has the wrong size");
  if (probe_state.empty()) probe_state = initial_state;
  if (probe_state.size() != vars.size()) throw std::invalid_argument(name + ": probe state has the wrong size");
}

std::size_t Mds::mode_index(std::string_view n) const {
  for (std::size_t i = 0; i < modes.size(); ++i)
    if (modes[i].name == n) return i;
  throw std::invalid_argument("unknown mode '" + std::string(n) + "'");
}

std::size_t Mds::var_index(std::string_view n) const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i].name == n) return i;
  throw std::invalid_argument("unknown variable '" + std::string(n) + "'");
}

std::vector<std::string> Mds::definition_names() const {
  std::vector<std::string> out;
  for (const auto& m : modes)
    for (const auto& d : m.defs)
      if (std::find(out.begin(), out.end(), d.name) == out.end()) out.push_back(d.name);
  return out;
}

std::vector<std::size_t> Mds::exits(std::size_t mode) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < transitions.size(); ++i)
    if (transitions[i].from == mode) out.push_back(i);
  return out;
}

void Mds::environment(std::size_t mode, std::span<const double> state, std::vector<double>& slots) const {
  const Mode& m = modes[mode];
  slots.assign(state.begin(), state.end());
  for (const auto& d : m.defs) slots.push_back(d.expr.eval(slots));
}

void Mds::derivative(std::size_t mode, std::span<const double> state, std::span<double> out) const {
  thread_local std::vector<double> slots;
  environment(mode, state, slots);
  const Mode& m = modes[mode];
  for (std::size_t i = 0; i < m.rhs.size(); ++i) out[i] = m.rhs[i].eval(slots);
}

bool Mds::safe(std::size_t mode, std::span<const double> state) const {
  thread_local std::vector<double> slots;
  environment(mode, state, slots);
  return spec_by_mode.at(mode).eval(slots) != 0.0;
}

double Mds::definition(std::size_t mode, std::string_view n, std::span<const double> state) const {
  const Mode& m = modes[mode];
  for (std::size_t i = 0; i < m.defs.size(); ++i) {
    if (m.defs[i].name != n) continue;
    std::vector<double> slots;
    environment(mode, state, slots);
    return slots[vars.size() + i];
  }
  return std::nan("");
}

std::vector<Guard> initial_guards(const Mds& mds, double grid) {
  std::vector<Guard> out;
  for (const auto& t : mds.transitions) {
    Guard g = Guard::unconstrained(mds.vars.size());
    for (std::size_t d = 0; d < t.initial.size(); ++d) {
      if (!t.initial[d]) continue;
      auto snap = [&](double v) {
        const double k = v / grid;
        if (std::fabs(k - std::round(k)) > 1e-6)
          throw std::invalid_argument("guard '" + t.name + "' endpoint " + std::to_string(v) + " is not on the grid");
        return static_cast<std::int64_t>(std::llround(k));
      };
      g.dims[d] = GridInterval{snap(t.initial[d]->lo), snap(t.initial[d]->hi)};
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::string_view to_string(SimOutcome o) {
  switch (o) {
    case SimOutcome::SafeExit: return "SAFE_EXIT";
    case SimOutcome::Unsafe: return "UNSAFE";
    case SimOutcome::NoExit: return "NO_EXIT";
  }
  return "?";
}

void rk4_step(const Mds& mds, std::size_t mode, std::vector<double>& s, double h) {
  const std::size_t n = s.size();
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  mds.derivative(mode, s, k1);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = s[i] + 0.5 * h * k1[i];
  mds.derivative(mode, tmp, k2);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = s[i] + 0.5 * h * k2[i];
  mds.derivative(mode, tmp, k3);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = s[i] + h * k3[i];
  mds.derivative(mode, tmp, k4);
  for (std::size_t i = 0; i < n; ++i) s[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
}

SimResult simulate_mode(const Mds& mds, std::size_t mode, std::span<const double> entry,
                        const std::vector<Guard>& guards, const SimConfig& cfg) {
  cfg.validate();
  if (mode >= mds.modes.size()) throw std::invalid_argument("simulate_mode: unknown mode");
  if (entry.size() != mds.vars.size()) throw std::invalid_argument("simulate_mode: state has the wrong size");
  if (guards.size() != mds.transitions.size()) throw std::invalid_argument("simulate_mode: one guard per transition");
  SimResult r;
  r.state.assign(entry.begin(), entry.end());
  const auto exits = mds.exits(mode);
  const double dwell = mds.modes[mode].dwell ? cfg.dwell : 0.0;
  const auto nsteps = static_cast<std::uint64_t>(std::floor(cfg.horizon / cfg.step + 1e-9));
  for (std::uint64_t k = 0;; ++k) {
    r.time = static_cast<double>(k) * cfg.step;
    r.steps = k;
    if (!all_finite(r.state)) {
      r.outcome = SimOutcome::Unsafe;
      r.numeric = true;
      return r;
    }
    if (!mds.safe(mode, r.state)) {
      r.outcome = SimOutcome::Unsafe;
      return r;
    }
    if (r.time + 1e-9 >= dwell) {
      for (std::size_t e : exits) {
        if (guards[e].contains(r.state, cfg.grid)) {
          r.outcome = SimOutcome::SafeExit;
          r.exit_transition = e;
          return r;
        }
      }
    }
    if (k == nsteps) break;
    rk4_step(mds, mode, r.state, cfg.step);
  }
  r.outcome = SimOutcome::NoExit;
  return r;
}

bool label_state(const Mds& mds, std::size_t mode, std::span<const double> state, const std::vector<Guard>& guards,
                 const SimConfig& cfg) {
  return simulate_mode(mds, mode, state, guards, cfg).outcome == SimOutcome::SafeExit;
}

namespace {

std::uint64_t bit_reverse(std::uint64_t x, unsigned bits) {
  std::uint64_t r = 0;
  for (unsigned i = 0; i < bits; ++i) {
    r = (r << 1) | (x & 1);
    x >>= 1;
  }
  return r;
}

double radical_inverse(std::uint64_t j, unsigned base) {
  double r = 0, f = 1.0 / base;
  while (j > 0) {
    r += f * static_cast<double>(j % base);
    j /= base;
    f /= base;
  }
  return r;
}

// Steps `p` through every point of the constrained dimensions; false when exhausted.
bool odometer(GridPoint& p, const Guard& box, const std::vector<std::size_t>& dims) {
  for (std::size_t d : dims) {
    if (p[d] < box.dims[d]->hi) {
      ++p[d];
      return true;
    }
    p[d] = box.dims[d]->lo;
  }
  return false;
}

bool inside(const GridPoint& p, const Guard& box, const std::vector<std::size_t>& dims) {
  for (std::size_t d : dims)
    if (p[d] < box.dims[d]->lo || p[d] > box.dims[d]->hi) return false;
  return true;
}

}  // namespace

Guard exhaustive_box(const Labeler& labeler, const Guard& start_box) {
  const std::size_t n = start_box.dims.size();
  if (start_box.empty) return Guard::none(n);
  std::vector<std::size_t> dims;
  GridPoint p(n, 0);
  for (std::size_t d = 0; d < n; ++d)
    if (start_box.dims[d]) {
      dims.push_back(d);
      p[d] = start_box.dims[d]->lo;
    }
  Guard out = Guard::none(n);
  do {
    if (!labeler(p)) continue;
    if (out.empty) {
      out = start_box;
      for (std::size_t d : dims) out.dims[d] = GridInterval{p[d], p[d]};
      continue;
    }
    for (std::size_t d : dims) {
      out.dims[d]->lo = std::min(out.dims[d]->lo, p[d]);
      out.dims[d]->hi = std::max(out.dims[d]->hi, p[d]);
    }
  } while (odometer(p, start_box, dims));
  return out;
}

LearnResult learn_hyperbox(const Labeler& labeler, const Guard& start_box, const LearnOptions& options) {
  start_box.validate();
  const std::size_t n = start_box.dims.size();
  LearnResult res;
  res.box = Guard::none(n);
  if (start_box.empty) return res;

  std::vector<std::size_t> dims;
  for (std::size_t d = 0; d < n; ++d)
    if (start_box.dims[d]) dims.push_back(d);

  std::map<GridPoint, bool> seen;
  Guard partial = Guard::none(n);
  auto label = [&](const GridPoint& p) {
    if (auto it = seen.find(p); it != seen.end()) return it->second;
    if (res.labels >= options.max_labels)
      throw LabelBudgetExceeded("hyperbox learning exceeded " + std::to_string(options.max_labels) + " labels",
                                partial);
    ++res.labels;
    const bool v = labeler(p);
    seen.emplace(p, v);
    return v;
  };

  GridPoint p(n, 0);
  for (std::size_t d : dims) p[d] = start_box.dims[d]->lo;

  std::optional<GridPoint> seed;
  if (dims.empty()) {
    if (label(p)) seed = p;
  } else if (dims.size() == 1) {
    const std::size_t d = dims[0];
    const auto count = static_cast<std::uint64_t>(start_box.dims[d]->hi - start_box.dims[d]->lo + 1);
    unsigned bits = 0;
    while ((std::uint64_t{1} << bits) < count) ++bits;
    const std::uint64_t m = std::uint64_t{1} << bits;
    for (std::uint64_t j = 1; j <= m && !seed; ++j) {
      const std::uint64_t x = bit_reverse(j % m, bits);
      const auto idx = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * count) / m);
      p[d] = start_box.dims[d]->lo + static_cast<std::int64_t>(idx);
      if (label(p)) seed = p;
    }
  } else {
    static const unsigned primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
    for (std::uint64_t j = 1; j <= options.max_seed_probes && !seed; ++j) {
      for (std::size_t i = 0; i < dims.size(); ++i) {
        const std::size_t d = dims[i];
        const auto count = static_cast<double>(start_box.dims[d]->hi - start_box.dims[d]->lo + 1);
        const auto off = static_cast<std::int64_t>(radical_inverse(j, primes[i % 16]) * count);
        p[d] = std::min(start_box.dims[d]->lo + off, start_box.dims[d]->hi);
      }
      if (label(p)) seed = p;
    }
    if (!seed) {
      for (std::size_t d : dims) p[d] = start_box.dims[d]->lo;
      do
        if (label(p)) seed = p;
      while (!seed && odometer(p, start_box, dims));
    }
  }
  if (!seed) return res;

  Guard box = start_box;
  for (std::size_t d : dims) box.dims[d] = GridInterval{(*seed)[d], (*seed)[d]};
  partial = box;
  for (std::size_t d : dims) {
    // Lower end, other coordinates at the box's upper corner.
    GridPoint q(n, 0);
    for (std::size_t e : dims) q[e] = box.dims[e]->hi;
    std::int64_t neg = start_box.dims[d]->lo - 1, pos = box.dims[d]->lo;
    while (pos - neg > 1) {
      q[d] = neg + (pos - neg) / 2;
      (label(q) ? pos : neg) = q[d];
    }
    box.dims[d]->lo = pos;
    partial = box;
    // Upper end, other coordinates at the box's lower corner.
    for (std::size_t e : dims) q[e] = box.dims[e]->lo;
    neg = start_box.dims[d]->hi + 1;
    pos = box.dims[d]->hi;
    while (neg - pos > 1) {
      q[d] = pos + (neg - pos) / 2;
      (label(q) ? pos : neg) = q[d];
    }
    box.dims[d]->hi = pos;
    partial = box;
  }

  GridPoint lo(n, 0), hi(n, 0);
  for (std::size_t d : dims) {
    lo[d] = box.dims[d]->lo;
    hi[d] = box.dims[d]->hi;
  }
  if (!label(lo) || !label(hi)) {
    res.non_monotone = true;
    res.log.push_back("a corner of the learned box labels negative");
  }
  for (const auto& [pt, v] : seen) {
    if (v != inside(pt, box, dims)) {
      res.non_monotone = true;
      std::string where;
      for (std::size_t d : dims) where += (where.empty() ? "" : ",") + std::to_string(pt[d]);
      res.log.push_back(std::string(v ? "positive" : "negative") + " label at grid point (" + where + ") " +
                        (v ? "outside" : "inside") + " the learned box");
    }
  }
  res.box = box;
  if (options.cross_check_limit > 0 && start_box.point_count() <= options.cross_check_limit) {
    const Guard scan = exhaustive_box(labeler, start_box);
    res.cross_check_agrees = scan == box;
    if (!*res.cross_check_agrees) res.log.push_back("learned box differs from the exhaustive scan");
  }
  return res;
}

SwitchResult synthesize_switching(const Mds& mds, std::vector<Guard> guards, const SimConfig& cfg,
                                  const SwitchOptions& options) {
  cfg.validate();
  if (guards.size() != mds.transitions.size())
    throw std::invalid_argument("synthesize_switching: one initial guard per transition");
  for (const auto& g : guards) g.validate();
  std::vector<std::size_t> order = options.order;
  if (order.empty())
    for (std::size_t i = 0; i < guards.size(); ++i) order.push_back(i);
  for (std::size_t t : order)
    if (t >= guards.size()) throw std::invalid_argument("synthesize_switching: order names an unknown transition");

  SwitchResult res;
  for (std::size_t pass = 1; pass <= options.max_passes; ++pass) {
    PassRecord rec;
    for (std::size_t t : order) {
      const Transition& tr = mds.transitions[t];
      if (tr.fixed || guards[t].empty) continue;
      Labeler labeler = [&](const GridPoint& p) {
        std::vector<double> s = mds.probe_state;
        for (std::size_t d = 0; d < s.size(); ++d)
          if (guards[t].dims[d]) s[d] = static_cast<double>(p[d]) * cfg.grid;
        return label_state(mds, tr.to, s, guards, cfg);
      };
      LearnResult lr = learn_hyperbox(labeler, guards[t], options.learn);
      res.labels += lr.labels;
      if (lr.non_monotone) {
        res.non_monotone = true;
        for (const auto& l : lr.log) res.log.push_back("pass " + std::to_string(pass) + " " + tr.name + ": " + l);
      }
      if (!(lr.box == guards[t])) {
        ++rec.changed;
        res.log.push_back("pass " + std::to_string(pass) + " " + tr.name + ": " +
                          guards[t].to_string(mds.vars, cfg.grid) + " -> " + lr.box.to_string(mds.vars, cfg.grid));
        guards[t] = lr.box;
      }
      if (guards[t].empty && tr.required) {
        rec.guards = guards;
        res.passes.push_back(std::move(rec));
        res.guards = guards;
        res.message = "guard " + tr.name + " became empty";
        return res;
      }
    }
    rec.guards = guards;
    const bool stable = rec.changed == 0;
    res.passes.push_back(std::move(rec));
    if (stable) {
      res.success = true;
      res.guards = guards;
      res.message = "fixpoint after " + std::to_string(pass) + " pass(es)";
      return res;
    }
  }
  res.guards = guards;
  res.message = "no fixpoint within " + std::to_string(options.max_passes) + " passes";
  return res;
}

ClosedLoopResult closed_loop_simulate(const Mds& mds, const std::vector<Guard>& guards, std::size_t start_mode,
                                      std::span<const double> start_state, const Policy& policy, const Goal& goal,
                                      const SimConfig& cfg, const ClosedLoopOptions& options) {
  cfg.validate();
  if (guards.size() != mds.transitions.size()) throw std::invalid_argument("closed_loop_simulate: one guard per transition");
  if (start_state.size() != mds.vars.size()) throw std::invalid_argument("closed_loop_simulate: state has the wrong size");
  ClosedLoopResult res;
  const auto def_names = mds.definition_names();
  std::vector<double> s(start_state.begin(), start_state.end());
  std::size_t mode = start_mode;
  double in_mode = 0;
  const auto nsteps = static_cast<std::uint64_t>(std::floor(options.horizon / cfg.step + 1e-9));
  const std::size_t every = std::max<std::size_t>(1, options.record_every);

  auto record = [&](double t) {
    TraceSample ts{t, mode, s, {}};
    for (const auto& dn : def_names) ts.defs.push_back(mds.definition(mode, dn, s));
    res.samples.push_back(std::move(ts));
  };
  auto check_safe = [&](double t) {
    if (all_finite(s) && mds.safe(mode, s)) return true;
    res.verdict.safe = false;
    res.verdict.violation_time = t;
    return false;
  };

  double t = 0;
  for (std::uint64_t k = 0;; ++k) {
    t = static_cast<double>(k) * cfg.step;
    if (!check_safe(t)) break;
    if (goal && goal(mode, s, t)) {
      res.verdict.goal_reached = true;
      break;
    }
    bool unsafe = false;
    for (std::size_t i = 0; i < options.switches_per_sample; ++i) {
      const auto req = policy(PolicyState{mode, s, t, in_mode});
      if (!req) break;
      if (*req >= mds.transitions.size() || mds.transitions[*req].from != mode)
        throw std::logic_error("policy requested a transition that does not leave the current mode");
      const double dwell = mds.modes[mode].dwell ? cfg.dwell : 0.0;
      if (in_mode + 1e-9 < dwell || !guards[*req].contains(s, cfg.grid)) break;
      res.events.push_back(SwitchEvent{t, *req, s});
      mode = mds.transitions[*req].to;
      in_mode = 0;
      if (!check_safe(t)) {
        unsafe = true;
        break;
      }
    }
    if (unsafe) break;
    if (k % every == 0) record(t);
    if (k == nsteps) {
      res.verdict.stuck = true;
      break;
    }
    rk4_step(mds, mode, s, cfg.step);
    in_mode += cfg.step;
  }
  if (res.samples.empty() || res.samples.back().time != t) record(t);
  res.verdict.final_state = s;
  res.verdict.final_mode = mode;
  res.verdict.final_time = t;
  return res;
}

Policy first_enabled_policy(const Mds& mds, const std::vector<Guard>& guards, double grid) {
  return [&mds, guards, grid](const PolicyState& ps) -> std::optional<std::size_t> {
    for (std::size_t e : mds.exits(ps.mode))
      if (guards[e].contains(ps.state, grid)) return e;
    return std::nullopt;
  };
}

}  // namespace scid::hybrid
