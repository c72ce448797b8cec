#include "scid/sat.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <ostream>
#include <random>

namespace scid::sat {

Solver::Solver(Options options) : options_(options) {}

Var Solver::new_var() {
  const Var v = num_vars();
  assigns_.push_back(Value::Undef);
  level_.push_back(0);
  reason_.push_back(kNoReason);
  polarity_.push_back(true);  // prefer false on first decision
  // A seeded jitter on the initial activity gives a reproducible variable
  // order that differs per seed; seed 0 keeps index order.
  double jitter = 0.0;
  if (options_.seed != 0) {
    std::mt19937_64 rng(options_.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(v));
    jitter = std::uniform_real_distribution<double>(0.0, 1e-5)(rng);
  }
  activity_.push_back(jitter);
  seen_.push_back(false);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_index_.push_back(-1);
  heap_insert(v);
  return v;
}

bool Solver::add_clause(std::span<const Lit> input) {
  assert(decision_level() == 0);
  original_.emplace_back(input.begin(), input.end());
  ++num_original_;
  if (!ok_) return false;

  std::vector<Lit> lits(input.begin(), input.end());
  std::sort(lits.begin(), lits.end());
  std::vector<Lit> kept;
  kept.reserve(lits.size());
  Lit prev;
  for (Lit l : lits) {
    if (value(l) == Value::True || (!kept.empty() && l == ~prev)) return true;
    if (value(l) == Value::False || (!kept.empty() && l == prev)) continue;
    kept.push_back(l);
    prev = l;
  }
  if (kept.empty()) {
    ok_ = false;
    return false;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], kNoReason);
    ok_ = (propagate() == kNoReason);
    return ok_;
  }
  attach(std::move(kept), false);
  return true;
}

int Solver::attach(std::vector<Lit> lits, bool learnt) {
  const int ci = static_cast<int>(clauses_.size());
  watches_[static_cast<std::size_t>((~lits[0]).index())].push_back({ci, lits[1]});
  watches_[static_cast<std::size_t>((~lits[1]).index())].push_back({ci, lits[0]});
  clauses_.push_back(Clause{std::move(lits), learnt, false, 0.0});
  if (learnt) ++num_learnts_;
  return ci;
}

void Solver::enqueue(Lit l, int reason) {
  const auto v = static_cast<std::size_t>(l.var());
  assert(assigns_[v] == Value::Undef);
  assigns_[v] = l.negated() ? Value::False : Value::True;
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(l);
}

// Returns the index of a conflicting clause, or kNoReason.
int Solver::propagate() {
  int conflict = kNoReason;
  while (qhead_ < trail_.size()) {
    const Lit p = trail_[qhead_++];
    ++stats_.propagations;
    auto& ws = watches_[static_cast<std::size_t>(p.index())];
    std::size_t i = 0;
    std::size_t j = 0;
    const Lit false_lit = ~p;
    while (i < ws.size()) {
      const Watcher w = ws[i];
      if (value(w.blocker) == Value::True) {
        ws[j++] = ws[i++];
        continue;
      }
      Clause& c = clauses_[static_cast<std::size_t>(w.clause)];
      if (c.deleted) {
        ++i;
        continue;
      }
      auto& lits = c.lits;
      if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
      ++i;
      const Lit first = lits[0];
      if (first != w.blocker && value(first) == Value::True) {
        ws[j++] = {w.clause, first};
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < lits.size(); ++k) {
        if (value(lits[k]) != Value::False) {
          std::swap(lits[1], lits[k]);
          watches_[static_cast<std::size_t>((~lits[1]).index())].push_back({w.clause, first});
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = {w.clause, first};
      if (value(first) == Value::False) {
        conflict = w.clause;
        qhead_ = trail_.size();
        while (i < ws.size()) ws[j++] = ws[i++];
      } else {
        enqueue(first, w.clause);
      }
    }
    ws.resize(j);
    if (conflict != kNoReason) break;
  }
  return conflict;
}

void Solver::bump_var(Var v) {
  auto& a = activity_[static_cast<std::size_t>(v)];
  a += var_inc_;
  if (a > 1e100) {
    for (auto& x : activity_) x *= 1e-100;
    var_inc_ *= 1e-100;
  }
  const int hp = heap_index_[static_cast<std::size_t>(v)];
  if (hp >= 0) heap_up(static_cast<std::size_t>(hp));
}

void Solver::bump_clause(Clause& c) {
  c.activity += clause_inc_;
  if (c.activity > 1e20) {
    for (auto& cl : clauses_)
      if (cl.learnt) cl.activity *= 1e-20;
    clause_inc_ *= 1e-20;
  }
}

void Solver::analyze(int conflict, std::vector<Lit>& learnt, int& backtrack_level) {
  learnt.clear();
  learnt.push_back(Lit());  // slot for the asserting literal
  int path_count = 0;
  Lit p;
  bool have_p = false;
  std::size_t index = trail_.size();
  int ci = conflict;

  do {
    Clause& c = clauses_[static_cast<std::size_t>(ci)];
    if (c.learnt) bump_clause(c);
    for (std::size_t k = have_p ? 1 : 0; k < c.lits.size(); ++k) {
      const Lit q = c.lits[k];
      const auto qv = static_cast<std::size_t>(q.var());
      if (!seen_[qv] && level_[qv] > 0) {
        bump_var(q.var());
        seen_[qv] = true;
        if (level_[qv] >= decision_level()) {
          ++path_count;
        } else {
          learnt.push_back(q);
        }
      }
    }
    while (!seen_[static_cast<std::size_t>(trail_[--index].var())]) {
    }
    p = trail_[index];
    have_p = true;
    ci = reason_[static_cast<std::size_t>(p.var())];
    seen_[static_cast<std::size_t>(p.var())] = false;
    --path_count;
    // Reason clauses keep their implied literal at position 0.
    assert(ci == kNoReason || clauses_[static_cast<std::size_t>(ci)].lits[0] == p);
  } while (path_count > 0);
  learnt[0] = ~p;

  // Recursive minimization of the learnt clause.
  std::uint32_t level_mask = 0;
  for (std::size_t k = 1; k < learnt.size(); ++k)
    level_mask |= 1U << (level_[static_cast<std::size_t>(learnt[k].var())] & 31);
  analyze_clear_.clear();
  for (std::size_t k = 1; k < learnt.size(); ++k) analyze_clear_.push_back(learnt[k].var());
  std::size_t out = 1;
  for (std::size_t k = 1; k < learnt.size(); ++k) {
    const auto v = static_cast<std::size_t>(learnt[k].var());
    if (reason_[v] == kNoReason || !literal_redundant(learnt[k], level_mask)) learnt[out++] = learnt[k];
  }
  learnt.resize(out);
  stats_.learnt_literals += static_cast<std::int64_t>(learnt.size());

  if (learnt.size() == 1) {
    backtrack_level = 0;
  } else {
    std::size_t max_i = 1;
    for (std::size_t k = 2; k < learnt.size(); ++k)
      if (level_[static_cast<std::size_t>(learnt[k].var())] > level_[static_cast<std::size_t>(learnt[max_i].var())])
        max_i = k;
    std::swap(learnt[1], learnt[max_i]);
    backtrack_level = level_[static_cast<std::size_t>(learnt[1].var())];
  }
  for (Var v : analyze_clear_) seen_[static_cast<std::size_t>(v)] = false;
  seen_[static_cast<std::size_t>(learnt[0].var())] = false;
}

bool Solver::literal_redundant(Lit l, std::uint32_t level_mask) {
  analyze_stack_.clear();
  analyze_stack_.push_back(l);
  const std::size_t top = analyze_clear_.size();
  while (!analyze_stack_.empty()) {
    const Lit q = analyze_stack_.back();
    analyze_stack_.pop_back();
    const int ci = reason_[static_cast<std::size_t>(q.var())];
    const auto& lits = clauses_[static_cast<std::size_t>(ci)].lits;
    for (std::size_t k = 1; k < lits.size(); ++k) {
      const Lit r = lits[k];
      const auto rv = static_cast<std::size_t>(r.var());
      if (seen_[rv] || level_[rv] == 0) continue;
      if (reason_[rv] != kNoReason && ((1U << (level_[rv] & 31)) & level_mask) != 0) {
        seen_[rv] = true;
        analyze_stack_.push_back(r);
        analyze_clear_.push_back(r.var());
      } else {
        for (std::size_t j = top; j < analyze_clear_.size(); ++j)
          seen_[static_cast<std::size_t>(analyze_clear_[j])] = false;
        analyze_clear_.resize(top);
        return false;
      }
    }
  }
  return true;
}

void Solver::backtrack(int level) {
  if (decision_level() <= level) return;
  const auto stop = static_cast<std::size_t>(trail_lim_[static_cast<std::size_t>(level)]);
  for (std::size_t k = trail_.size(); k-- > stop;) {
    const auto v = static_cast<std::size_t>(trail_[k].var());
    assigns_[v] = Value::Undef;
    reason_[v] = kNoReason;
    polarity_[v] = trail_[k].negated();
    if (heap_index_[v] < 0) heap_insert(static_cast<Var>(v));
  }
  trail_.resize(stop);
  trail_lim_.resize(static_cast<std::size_t>(level));
  qhead_ = trail_.size();
}

Lit Solver::pick_branch() {
  while (!heap_.empty()) {
    const Var v = heap_pop();
    if (assigns_[static_cast<std::size_t>(v)] == Value::Undef)
      return Lit(v, polarity_[static_cast<std::size_t>(v)]);
  }
  return Lit();
}

bool Solver::locked(int ci) const {
  const auto& c = clauses_[static_cast<std::size_t>(ci)];
  const Lit first = c.lits[0];
  return value(first) == Value::True && reason_[static_cast<std::size_t>(first.var())] == ci;
}

void Solver::reduce_learnts() {
  std::vector<int> learnts;
  for (int ci = 0; ci < static_cast<int>(clauses_.size()); ++ci) {
    const auto& c = clauses_[static_cast<std::size_t>(ci)];
    if (c.learnt && !c.deleted && c.lits.size() > 2) learnts.push_back(ci);
  }
  std::sort(learnts.begin(), learnts.end(), [&](int a, int b) {
    return clauses_[static_cast<std::size_t>(a)].activity < clauses_[static_cast<std::size_t>(b)].activity;
  });
  const std::size_t half = learnts.size() / 2;
  for (std::size_t k = 0; k < half; ++k) {
    const int ci = learnts[k];
    if (locked(ci)) continue;
    clauses_[static_cast<std::size_t>(ci)].deleted = true;
    clauses_[static_cast<std::size_t>(ci)].lits.clear();
    clauses_[static_cast<std::size_t>(ci)].lits.shrink_to_fit();
    --num_learnts_;
  }
  detach_deleted();
}

void Solver::detach_deleted() {
  for (auto& ws : watches_) {
    std::erase_if(ws, [&](const Watcher& w) { return clauses_[static_cast<std::size_t>(w.clause)].deleted; });
  }
}

Status Solver::search(std::int64_t conflicts_allowed, std::span<const Lit> assumptions) {
  std::vector<Lit> learnt;
  std::int64_t conflicts_here = 0;
  for (;;) {
    const int conflict = propagate();
    if (conflict != kNoReason) {
      ++stats_.conflicts;
      ++conflicts_here;
      if (decision_level() == 0) return Status::Unsat;
      int bt = 0;
      analyze(conflict, learnt, bt);
      backtrack(bt);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoReason);
      } else {
        const int ci = attach(learnt, true);
        bump_clause(clauses_[static_cast<std::size_t>(ci)]);
        enqueue(learnt[0], ci);
      }
      var_inc_ /= options_.var_decay;
      clause_inc_ /= options_.clause_decay;
      continue;
    }
    if (conflicts_here >= conflicts_allowed) {
      backtrack(0);
      return Status::Unknown;
    }
    if (static_cast<double>(num_learnts_) - static_cast<double>(trail_.size()) >= max_learnts_) {
      reduce_learnts();
      max_learnts_ *= 1.1;
    }
    Lit next;
    bool have_next = false;
    while (decision_level() < static_cast<int>(assumptions.size())) {
      const Lit a = assumptions[static_cast<std::size_t>(decision_level())];
      if (value(a) == Value::True) {
        trail_lim_.push_back(static_cast<int>(trail_.size()));
      } else if (value(a) == Value::False) {
        return Status::Unsat;
      } else {
        next = a;
        have_next = true;
        break;
      }
    }
    if (!have_next) {
      next = pick_branch();
      if (next.index() < 0) return Status::Sat;
      ++stats_.decisions;
    }
    trail_lim_.push_back(static_cast<int>(trail_.size()));
    enqueue(next, kNoReason);
  }
}

Status Solver::solve(std::span<const Lit> assumptions) {
  model_.clear();
  if (!ok_) return Status::Unsat;
  max_learnts_ = std::max(1000.0, static_cast<double>(num_original_) / 3.0);
  std::int64_t budget = options_.conflict_limit;
  double restart_len = options_.restart_first;
  Status status = Status::Unknown;
  while (status == Status::Unknown) {
    const auto allowed = std::min<std::int64_t>(static_cast<std::int64_t>(restart_len), budget);
    const std::int64_t before = stats_.conflicts;
    status = search(allowed, assumptions);
    budget -= stats_.conflicts - before;
    if (status == Status::Unknown) {
      if (budget <= 0) break;
      ++stats_.restarts;
      restart_len *= options_.restart_growth;
    }
  }
  if (status == Status::Sat) {
    model_.resize(assigns_.size());
    for (std::size_t v = 0; v < assigns_.size(); ++v) model_[v] = assigns_[v] == Value::True;
  }
  if (status == Status::Unsat && assumptions.empty()) ok_ = false;
  backtrack(0);
  return status;
}

void Solver::heap_insert(Var v) {
  heap_index_[static_cast<std::size_t>(v)] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

void Solver::heap_up(std::size_t pos) {
  const Var v = heap_[pos];
  while (pos > 0) {
    const std::size_t parent = (pos - 1) / 2;
    if (!heap_less(v, heap_[parent])) break;
    heap_[pos] = heap_[parent];
    heap_index_[static_cast<std::size_t>(heap_[pos])] = static_cast<int>(pos);
    pos = parent;
  }
  heap_[pos] = v;
  heap_index_[static_cast<std::size_t>(v)] = static_cast<int>(pos);
}

void Solver::heap_down(std::size_t pos) {
  const Var v = heap_[pos];
  for (;;) {
    std::size_t child = 2 * pos + 1;
    if (child >= heap_.size()) break;
    if (child + 1 < heap_.size() && heap_less(heap_[child + 1], heap_[child])) ++child;
    if (!heap_less(heap_[child], v)) break;
    heap_[pos] = heap_[child];
    heap_index_[static_cast<std::size_t>(heap_[pos])] = static_cast<int>(pos);
    pos = child;
  }
  heap_[pos] = v;
  heap_index_[static_cast<std::size_t>(v)] = static_cast<int>(pos);
}

Var Solver::heap_pop() {
  const Var top = heap_.front();
  heap_index_[static_cast<std::size_t>(top)] = -1;
  const Var last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_index_[static_cast<std::size_t>(last)] = 0;
    heap_down(0);
  }
  return top;
}

void Solver::write_dimacs(std::ostream& os) const {
  os << "p cnf " << num_vars() << ' ' << original_.size() << '\n';
  for (const auto& c : original_) {
    for (Lit l : c) os << (l.negated() ? -(l.var() + 1) : (l.var() + 1)) << ' ';
    os << "0\n";
  }
}

}  // namespace scid::sat
