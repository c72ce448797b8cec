#include "scid/paths.hpp"

#include <map>
#include <set>

namespace scid::paths {

PathVector PathVector::from_edges(std::size_t m, std::span<const std::size_t> edges) {
  PathVector p(m);
  for (std::size_t e : edges) {
    if (e >= m) throw std::out_of_range("edge id out of range");
    p.bits[e] = 1;
  }
  return p;
}

std::vector<std::size_t> PathVector::edges() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) out.push_back(i);
  return out;
}

RationalRow PathVector::to_row() const {
  RationalRow r(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) r[i] = bits[i];
  return r;
}

std::string PathVector::to_string() const {
  std::string s;
  for (auto b : bits) s += b ? '1' : '0';
  return s;
}

bool flow_conserving(const Cfg& cfg, const PathVector& p) {
  if (p.size() != cfg.num_edges()) return false;
  std::vector<int> in(cfg.num_nodes(), 0), out(cfg.num_nodes(), 0);
  for (std::size_t e = 0; e < p.size(); ++e) {
    if (p.bits[e] > 1) return false;
    if (!p.bits[e]) continue;
    ++out[cfg.edges[e].from];
    ++in[cfg.edges[e].to];
  }
  if (out[cfg.source] != 1 || in[cfg.source] != 0) return false;
  if (in[cfg.sink] != 1 || out[cfg.sink] != 0) return false;
  for (std::size_t n = 0; n < cfg.num_nodes(); ++n) {
    if (n == cfg.source || n == cfg.sink) continue;
    if (in[n] != out[n] || in[n] > 1) return false;
  }
  // Balanced degrees in a DAG leave no room for detached cycles, so the
  // selected edges form one path.
  return true;
}

std::vector<std::size_t> edge_sequence(const Cfg& cfg, const PathVector& p) {
  if (!flow_conserving(cfg, p)) throw std::invalid_argument("vector is not a source-to-sink path");
  std::vector<std::size_t> next(cfg.num_nodes(), SIZE_MAX);
  for (std::size_t e = 0; e < p.size(); ++e)
    if (p.bits[e]) next[cfg.edges[e].from] = e;
  std::vector<std::size_t> seq;
  for (std::size_t n = cfg.source; n != cfg.sink;) {
    const std::size_t e = next[n];
    seq.push_back(e);
    n = cfg.edges[e].to;
  }
  return seq;
}

namespace {

using State = std::map<std::string, bv::Term>;

bv::Term subst(const bv::Term& t, const State& st) {
  return bv::substitute(t, [&](const std::string& name) -> std::optional<bv::Term> {
    auto it = st.find(name);
    if (it == st.end()) return std::nullopt;
    return it->second;
  });
}

void apply(const Cfg& cfg, std::size_t node, State& st) {
  for (const auto& a : cfg.nodes[node].assignments) st[a.var] = subst(a.value, st);
}

}  // namespace

bv::Formula path_to_formula(const Cfg& cfg, const PathVector& p) {
  State st;
  for (const auto& in : cfg.inputs) st[in] = bv::var(in, cfg.width);
  for (const auto& l : cfg.locals) st[l] = bv::constant(0, cfg.width);
  bv::Formula f;
  apply(cfg, cfg.source, st);
  for (std::size_t e : edge_sequence(cfg, p)) {
    const auto& edge = cfg.edges[e];
    if (edge.cond) {
      bv::Term c = subst(*edge.cond, st);
      if (!(c.is_const() && c.value() == 1)) f.add(std::move(c));
    }
    apply(cfg, edge.to, st);
  }
  return f;
}

void for_each_path(const Cfg& cfg, const std::function<bool(const PathVector&)>& visit, std::size_t budget) {
  std::vector<std::vector<std::size_t>> out(cfg.num_nodes());
  for (std::size_t e = 0; e < cfg.num_edges(); ++e) out[cfg.edges[e].from].push_back(e);
  PathVector cur(cfg.num_edges());
  std::size_t produced = 0;
  // Explicit stack of (node, next out-edge index).
  std::vector<std::pair<std::size_t, std::size_t>> stack{{cfg.source, 0}};
  std::vector<std::size_t> taken;
  while (!stack.empty()) {
    auto& [node, idx] = stack.back();
    if (node == cfg.sink) {
      if (produced++ >= budget)
        throw PathBudgetExceeded("path enumeration exceeded the budget of " + std::to_string(budget) +
                                 " paths; use a smaller benchmark");
      if (!visit(cur)) return;
      stack.pop_back();
      if (!taken.empty()) {
        cur.bits[taken.back()] = 0;
        taken.pop_back();
      }
      continue;
    }
    if (idx == out[node].size()) {
      stack.pop_back();
      if (!taken.empty()) {
        cur.bits[taken.back()] = 0;
        taken.pop_back();
      }
      continue;
    }
    const std::size_t e = out[node][idx++];
    cur.bits[e] = 1;
    taken.push_back(e);
    stack.emplace_back(cfg.edges[e].to, 0);
  }
}

std::vector<PathVector> enumerate_paths(const Cfg& cfg, std::size_t budget) {
  std::vector<PathVector> all;
  for_each_path(
      cfg,
      [&](const PathVector& p) {
        all.push_back(p);
        return true;
      },
      budget);
  return all;
}

std::optional<Test> feasible_test(const Cfg& cfg, const PathVector& p, const bv::SolverOptions& options) {
  const auto r = bv::solve(path_to_formula(cfg, p), options);
  if (!r.sat()) return std::nullopt;
  Test t;
  for (const auto& in : cfg.inputs) {
    auto it = r.model.find(in);
    t.push_back(it == r.model.end() ? 0 : it->second);
  }
  return t;
}

std::vector<RationalRow> BasisSet::lengths_matrix() const {
  std::vector<RationalRow> m;
  for (const auto& p : paths) m.push_back(p.to_row());
  return m;
}

namespace {

// The first path, in edge-id order, through edge e.
PathVector first_path_through(const Cfg& cfg, std::size_t e) {
  PathVector p(cfg.num_edges());
  p.bits[e] = 1;
  std::vector<std::optional<std::size_t>> first_in(cfg.num_nodes()), first_out(cfg.num_nodes());
  for (std::size_t i = 0; i < cfg.num_edges(); ++i) {
    if (!first_out[cfg.edges[i].from]) first_out[cfg.edges[i].from] = i;
    if (!first_in[cfg.edges[i].to]) first_in[cfg.edges[i].to] = i;
  }
  for (std::size_t n = cfg.edges[e].from; n != cfg.source;) {
    const std::size_t i = *first_in[n];
    p.bits[i] = 1;
    n = cfg.edges[i].from;
  }
  for (std::size_t n = cfg.edges[e].to; n != cfg.sink;) {
    const std::size_t i = *first_out[n];
    p.bits[i] = 1;
    n = cfg.edges[i].to;
  }
  return p;
}

}  // namespace

BasisSet extract_feasible_basis(const Cfg& cfg, const BasisOptions& options) {
  const std::size_t m = cfg.num_edges();
  const std::size_t bound = cfg.cyclomatic_bound();
  RowSpace space(m);
  BasisSet basis;
  std::set<PathVector> tried;
  std::size_t candidates = 0;

  auto consider = [&](const PathVector& p) {
    if (!tried.insert(p).second) return;
    ++candidates;
    const RationalRow row = p.to_row();
    if (space.in_span(row)) return;
    auto test = feasible_test(cfg, p, options.solver);
    if (!test) return;
    space.add(row);
    basis.paths.push_back(p);
    basis.tests.push_back(std::move(*test));
  };

  for (std::size_t e = 0; e < m && space.rank() < bound; ++e) consider(first_path_through(cfg, e));

  bool exhausted = true;
  if (space.rank() < bound) {
    try {
      for_each_path(
          cfg,
          [&](const PathVector& p) {
            consider(p);
            if (candidates >= options.candidate_budget && space.rank() < bound) {
              exhausted = false;
              return false;
            }
            return space.rank() < bound;
          },
          options.candidate_budget + m);
    } catch (const PathBudgetExceeded&) {
      exhausted = false;
    }
  }

  if (!exhausted) {
    std::vector<std::size_t> uncovered;
    for (std::size_t e = 0; e < m; ++e) {
      bool covered = false;
      for (const auto& p : basis.paths) covered = covered || p.bits[e];
      if (!covered) uncovered.push_back(e);
    }
    std::string msg = "feasible basis incomplete after " + std::to_string(candidates) + " candidates: rank " +
                      std::to_string(space.rank()) + " of at most " + std::to_string(bound);
    if (!uncovered.empty()) {
      msg += "; edges never covered:";
      for (auto e : uncovered) msg += " e" + std::to_string(e);
    }
    throw BasisFailure(msg, space.rank(), std::move(uncovered));
  }
  check_basis(cfg, basis);
  return basis;
}

std::optional<RationalRow> express_in_basis(const BasisSet& basis, const PathVector& p) {
  return solve_combination(basis.lengths_matrix(), p.to_row());
}

void check_basis(const Cfg& cfg, const BasisSet& basis) {
  if (basis.paths.size() != basis.tests.size()) throw std::logic_error("basis: paths and tests differ in number");
  if (matrix_rank(basis.lengths_matrix()) != basis.size()) throw std::logic_error("basis rows are dependent");
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto ex = frontend::walk(cfg, basis.tests[i]);
    if (PathVector::from_edges(cfg.num_edges(), ex.edges) != basis.paths[i])
      throw std::logic_error("basis test " + std::to_string(i) + " does not replay its path");
  }
}

}  // namespace scid::paths
