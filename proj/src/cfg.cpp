#include "scid/cfg.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace scid::frontend {

namespace {

/// Known constant values; absent names take their default.
struct Env {
  std::map<std::string, std::optional<std::uint64_t>> known;
};

struct Pending {
  std::size_t from;
  std::optional<bv::Term> cond;
  Env env;
};

using Pos = std::vector<Pending>;

struct Value {
  bv::Term term;
  bool is_bool = false;
};

struct Scope {
  std::string prefix;  // empty for the entry function
  std::vector<std::string> ret_vars;
  Pos* returns = nullptr;
};

class Builder {
public:
  Builder(const Program& p, const BuildOptions& o) : p_(p), opts_(o), w_(p.width) {}

  Cfg run() {
    const Function& entry = p_.entry();
    cfg_.width = w_;
    cfg_.inputs = entry.params;
    inputs_.insert(entry.params.begin(), entry.params.end());
    const std::size_t nout = p_.output_count();
    for (std::size_t i = 0; i < nout; ++i) cfg_.outputs.push_back("$ret" + std::to_string(i));

    const std::size_t src = new_node();
    Pos returns;
    Scope scope{"", cfg_.outputs, &returns};
    Pos end = exec(entry.body, Pos{Pending{src, std::nullopt, {}}}, scope);
    end.insert(end.end(), returns.begin(), returns.end());
    cfg_.sink = new_node();
    for (auto& pe : end) add_edge(pe.from, cfg_.sink, pe.cond);
    cfg_.source = src;
    finish();
    return std::move(cfg_);
  }

private:
  const Program& p_;
  BuildOptions opts_;
  unsigned w_;
  Cfg cfg_;
  std::set<std::string> inputs_;
  std::set<std::string> assigned_;
  std::vector<std::vector<Pos>*> break_stack_;
  std::size_t call_counter_ = 0;

  std::size_t new_node() {
    if (cfg_.nodes.size() >= opts_.node_budget)
      throw BuildError("control-flow graph exceeds the node budget of " + std::to_string(opts_.node_budget));
    cfg_.nodes.emplace_back();
    return cfg_.nodes.size() - 1;
  }

  void add_edge(std::size_t from, std::size_t to, std::optional<bv::Term> cond) {
    cfg_.edges.push_back(CfgEdge{from, to, std::move(cond)});
  }

  std::optional<std::uint64_t> lookup(const Env& env, const std::string& name) const {
    auto it = env.known.find(name);
    if (it != env.known.end()) return it->second;
    if (inputs_.count(name)) return std::nullopt;
    return 0;
  }

  Env meet(const Pos& pos) const {
    Env out = pos.front().env;
    std::set<std::string> names;
    for (const auto& pe : pos)
      for (const auto& [k, v] : pe.env.known) names.insert(k);
    for (const auto& n : names) {
      std::optional<std::uint64_t> v = lookup(pos.front().env, n);
      for (std::size_t i = 1; i < pos.size() && v; ++i)
        if (lookup(pos[i].env, n) != v) v.reset();
      out.known[n] = v;
    }
    return out;
  }

  /// Resolves a position into an open block whose assignments may be extended.
  std::pair<std::size_t, Env> ensure_block(Pos pos) {
    if (pos.size() == 1 && !pos.front().cond) return {pos.front().from, std::move(pos.front().env)};
    Env env = meet(pos);
    const std::size_t j = new_node();
    for (auto& pe : pos) add_edge(pe.from, j, pe.cond);
    return {j, std::move(env)};
  }

  static std::string rename(const Scope& s, const std::string& name) { return s.prefix + name; }

  bv::Term read(const std::string& name, const Env& env) const {
    if (auto v = lookup(env, name)) return bv::constant(*v, w_);
    return bv::var(name, w_);
  }

  bv::Term as_bv(const Value& v) const {
    if (!v.is_bool) return v.term;
    return bv::ite(v.term, bv::constant(1, w_), bv::constant(0, w_));
  }

  bv::Term as_bool(const Value& v) const {
    if (v.is_bool) return v.term;
    return bv::ne(v.term, bv::constant(0, w_));
  }

  Value lower(const Expr& e, const Env& env, const Scope& s) const {
    switch (e.kind) {
      case Expr::Kind::Literal: return {bv::constant(e.value, w_), false};
      case Expr::Kind::Variable: return {read(rename(s, e.name), env), false};
      case Expr::Kind::Unary: {
        const Value x = lower(e.operands[0], env, s);
        switch (e.unary_op) {
          case UnaryOp::Neg: return {bv::sub(bv::constant(0, w_), as_bv(x)), false};
          case UnaryOp::BitNot: return {bv::bvnot(as_bv(x)), false};
          case UnaryOp::LogNot: return {bv::bvnot(as_bool(x)), true};
        }
        break;
      }
      case Expr::Kind::Binary: {
        const Value a = lower(e.operands[0], env, s);
        if (e.binary_op == BinaryOp::Shl || e.binary_op == BinaryOp::Shr) {
          const auto k = static_cast<unsigned>(e.operands[1].value);
          return {e.binary_op == BinaryOp::Shl ? bv::shl(as_bv(a), k) : bv::lshr(as_bv(a), k), false};
        }
        const Value b = lower(e.operands[1], env, s);
        const bv::Term x = as_bv(a);
        const bv::Term y = as_bv(b);
        switch (e.binary_op) {
          case BinaryOp::Add: return {x + y, false};
          case BinaryOp::Sub: return {x - y, false};
          case BinaryOp::Mul: return {x * y, false};
          case BinaryOp::BitAnd: return {x & y, false};
          case BinaryOp::BitOr: return {x | y, false};
          case BinaryOp::BitXor: return {x ^ y, false};
          case BinaryOp::Eq: return {bv::eq(x, y), true};
          case BinaryOp::Ne: return {bv::ne(x, y), true};
          case BinaryOp::Lt: return {bv::ult(x, y), true};
          case BinaryOp::Le: return {bv::ule(x, y), true};
          case BinaryOp::Gt: return {bv::ugt(x, y), true};
          case BinaryOp::Ge: return {bv::uge(x, y), true};
          case BinaryOp::LogAnd: return {bv::bvand(as_bool(a), as_bool(b)), true};
          case BinaryOp::LogOr: return {bv::bvor(as_bool(a), as_bool(b)), true};
          default: break;
        }
        break;
      }
      case Expr::Kind::Call: break;
    }
    throw std::logic_error("unexpected expression in lowering");
  }

  void assign(std::size_t node, Env& env, const std::string& var, bv::Term value) {
    env.known[var] = value.is_const() ? std::optional<std::uint64_t>(value.value()) : std::nullopt;
    assigned_.insert(var);
    cfg_.nodes[node].assignments.push_back(Assignment{var, std::move(value)});
  }

  Pos exec(const std::vector<Stmt>& body, Pos pos, const Scope& s) {
    for (const Stmt& st : body) {
      if (pos.empty()) break;
      pos = exec(st, std::move(pos), s);
    }
    return pos;
  }

  Pos branch(std::size_t node, const Env& env, const bv::Term& cond, Pos& otherwise) {
    if (cond.is_const()) {
      if (cond.value() != 0) return Pos{Pending{node, std::nullopt, env}};
      otherwise.push_back(Pending{node, std::nullopt, env});
      return {};
    }
    otherwise.push_back(Pending{node, bv::bvnot(cond), env});
    return Pos{Pending{node, cond, env}};
  }

  // Inlines a call; the result lands in `target` when given.
  Pos inline_call(const Expr& call, const std::optional<std::string>& target, Pos pos, const Scope& s) {
    const Function& callee = *p_.find(call.name);
    const std::string prefix = callee.name + "#" + std::to_string(call_counter_++) + ".";
    const std::string ret = prefix + "$ret";
    {
      auto [n, env] = ensure_block(std::move(pos));
      std::vector<bv::Term> args;
      for (const Expr& a : call.operands) args.push_back(as_bv(lower(a, env, s)));
      for (std::size_t i = 0; i < args.size(); ++i) assign(n, env, prefix + callee.params[i], args[i]);
      pos = Pos{Pending{n, std::nullopt, std::move(env)}};
    }
    Pos returns;
    Scope inner{prefix, {ret}, &returns};
    std::vector<std::vector<Pos>*> saved;
    saved.swap(break_stack_);
    Pos end = exec(callee.body, std::move(pos), inner);
    break_stack_.swap(saved);
    end.insert(end.end(), returns.begin(), returns.end());
    if (end.empty()) return end;
    if (!target) return end;
    auto [n, env] = ensure_block(std::move(end));
    assign(n, env, *target, read(ret, env));
    return Pos{Pending{n, std::nullopt, std::move(env)}};
  }

  Pos exec(const Stmt& st, Pos pos, const Scope& s) {
    switch (st.kind) {
      case Stmt::Kind::Assign: {
        const std::string target = rename(s, st.target);
        if (st.expr.kind == Expr::Kind::Call) return inline_call(st.expr, target, std::move(pos), s);
        auto [n, env] = ensure_block(std::move(pos));
        assign(n, env, target, as_bv(lower(st.expr, env, s)));
        return Pos{Pending{n, std::nullopt, std::move(env)}};
      }
      case Stmt::Kind::Call: return inline_call(st.expr, std::nullopt, std::move(pos), s);
      case Stmt::Kind::If: {
        auto [n, env] = ensure_block(std::move(pos));
        const bv::Term c = as_bool(lower(st.expr, env, s));
        Pos else_pos;
        Pos then_pos = branch(n, env, c, else_pos);
        Pos out = then_pos.empty() ? Pos{} : exec(st.body, std::move(then_pos), s);
        if (!else_pos.empty()) {
          Pos e = exec(st.else_body, std::move(else_pos), s);
          out.insert(out.end(), e.begin(), e.end());
        }
        return out;
      }
      case Stmt::Kind::While: {
        Pos exits;
        std::vector<Pos> breaks;
        break_stack_.push_back(&breaks);
        for (std::uint32_t k = 0; k < st.bound && !pos.empty(); ++k) {
          auto [n, env] = ensure_block(std::move(pos));
          const bv::Term c = as_bool(lower(st.expr, env, s));
          Pos body_pos = branch(n, env, c, exits);
          pos = body_pos.empty() ? Pos{} : exec(st.body, std::move(body_pos), s);
        }
        break_stack_.pop_back();
        exits.insert(exits.end(), pos.begin(), pos.end());
        for (auto& b : breaks) exits.insert(exits.end(), b.begin(), b.end());
        return exits;
      }
      case Stmt::Kind::Return: {
        auto [n, env] = ensure_block(std::move(pos));
        std::vector<bv::Term> vals;
        for (const Expr& v : st.values) vals.push_back(as_bv(lower(v, env, s)));
        for (std::size_t i = 0; i < vals.size(); ++i) assign(n, env, s.ret_vars[i], vals[i]);
        s.returns->push_back(Pending{n, std::nullopt, std::move(env)});
        return {};
      }
      case Stmt::Kind::Break:
        break_stack_.back()->push_back(std::move(pos));
        return {};
    }
    return pos;
  }

  void finish() {
    // Drop nodes that cannot reach the sink (only possible for dead joins).
    const std::size_t n = cfg_.nodes.size();
    std::vector<char> live(n, 0);
    live[cfg_.sink] = 1;
    std::vector<std::vector<std::size_t>> succ(n);
    for (const auto& e : cfg_.edges) succ[e.from].push_back(e.to);
    for (std::size_t i = n; i-- > 0;)
      for (std::size_t t : succ[i])
        if (live[t]) live[i] = 1;
    std::vector<std::size_t> remap(n, SIZE_MAX);
    std::vector<CfgNode> nodes;
    for (std::size_t i = 0; i < n; ++i)
      if (live[i]) {
        remap[i] = nodes.size();
        nodes.push_back(std::move(cfg_.nodes[i]));
      }
    std::vector<CfgEdge> edges;
    for (auto& e : cfg_.edges)
      if (live[e.from] && live[e.to]) edges.push_back(CfgEdge{remap[e.from], remap[e.to], std::move(e.cond)});
    std::stable_sort(edges.begin(), edges.end(), [](const CfgEdge& a, const CfgEdge& b) { return a.from < b.from; });
    cfg_.nodes = std::move(nodes);
    cfg_.edges = std::move(edges);
    cfg_.source = remap[cfg_.source];
    cfg_.sink = remap[cfg_.sink];
    for (const auto& v : assigned_)
      if (!inputs_.count(v)) cfg_.locals.push_back(v);
    check_dag(cfg_);
  }
};

}  // namespace

std::vector<std::size_t> Cfg::out_edges(std::size_t node) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].from == node) out.push_back(i);
  return out;
}

std::vector<std::size_t> Cfg::in_edges(std::size_t node) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].to == node) out.push_back(i);
  return out;
}

std::uint64_t Cfg::path_count() const {
  std::vector<std::uint64_t> count(nodes.size(), 0);
  const auto order = topological_order(*this);
  count[source] = 1;
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t n : order)
    for (std::size_t e : out_edges(n)) {
      std::uint64_t& c = count[edges[e].to];
      c = (c > kMax - count[n]) ? kMax : c + count[n];
    }
  return count[sink];
}

std::string Cfg::to_dot() const {
  std::ostringstream os;
  auto escape = [](const std::string& s) {
    std::string r;
    for (char c : s) {
      if (c == '"' || c == '\\') r += '\\';
      r += c;
    }
    return r;
  };
  os << "digraph cfg {\n  node [shape=box, fontname=\"monospace\"];\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::string label = "n" + std::to_string(i);
    if (i == source) label += " (source)";
    if (i == sink) label += " (sink)";
    for (const auto& a : nodes[i].assignments) label += "\\l" + escape(a.var + " := " + bv::to_string(a.value));
    if (!nodes[i].assignments.empty()) label += "\\l";
    os << "  n" << i << " [label=\"" << label << "\"];\n";
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    os << "  n" << edges[i].from << " -> n" << edges[i].to << " [label=\"e" << i;
    if (edges[i].cond) os << ": " << escape(bv::to_string(*edges[i].cond));
    os << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

Cfg build_dag(const Program& p, const BuildOptions& options) { return Builder(p, options).run(); }

std::vector<std::size_t> topological_order(const Cfg& cfg) {
  std::vector<std::size_t> indeg(cfg.nodes.size(), 0);
  std::vector<std::vector<std::size_t>> succ(cfg.nodes.size());
  for (const auto& e : cfg.edges) {
    ++indeg[e.to];
    succ[e.from].push_back(e.to);
  }
  std::set<std::size_t> ready;
  for (std::size_t i = 0; i < indeg.size(); ++i)
    if (indeg[i] == 0) ready.insert(i);
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    const std::size_t n = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(n);
    for (std::size_t t : succ[n])
      if (--indeg[t] == 0) ready.insert(t);
  }
  if (order.size() != cfg.nodes.size()) throw std::logic_error("control-flow graph has a cycle");
  return order;
}

void check_dag(const Cfg& cfg) {
  if (cfg.nodes.empty()) throw std::logic_error("empty control-flow graph");
  topological_order(cfg);
  std::vector<std::size_t> indeg(cfg.nodes.size(), 0), outdeg(cfg.nodes.size(), 0);
  for (const auto& e : cfg.edges) {
    if (e.from >= cfg.nodes.size() || e.to >= cfg.nodes.size()) throw std::logic_error("edge endpoint out of range");
    ++indeg[e.to];
    ++outdeg[e.from];
  }
  for (std::size_t i = 0; i < cfg.nodes.size(); ++i) {
    if (indeg[i] == 0 && i != cfg.source) throw std::logic_error("node " + std::to_string(i) + " is unreachable");
    if (outdeg[i] == 0 && i != cfg.sink) throw std::logic_error("node " + std::to_string(i) + " is a dead end");
  }
  if (indeg[cfg.source] != 0) throw std::logic_error("source has incoming edges");
  if (outdeg[cfg.sink] != 0) throw std::logic_error("sink has outgoing edges");
}

Execution walk(const Cfg& cfg, std::span<const std::uint64_t> inputs) {
  if (inputs.size() != cfg.inputs.size()) throw std::invalid_argument("walk: wrong number of inputs");
  bv::Model state;
  for (std::size_t i = 0; i < inputs.size(); ++i) state[cfg.inputs[i]] = inputs[i] & bv::mask(cfg.width);
  for (const auto& l : cfg.locals) state[l] = 0;
  auto apply = [&](std::size_t n) {
    for (const auto& a : cfg.nodes[n].assignments) state[a.var] = bv::evaluate(a.value, state);
  };
  Execution ex;
  std::size_t cur = cfg.source;
  apply(cur);
  while (cur != cfg.sink) {
    std::optional<std::size_t> taken;
    for (std::size_t e : cfg.out_edges(cur)) {
      const auto& edge = cfg.edges[e];
      if (edge.cond && bv::evaluate(*edge.cond, state) == 0) continue;
      if (taken) throw std::logic_error("walk: two enabled edges leave node " + std::to_string(cur));
      taken = e;
    }
    if (!taken) throw std::logic_error("walk: no enabled edge leaves node " + std::to_string(cur));
    ex.edges.push_back(*taken);
    cur = cfg.edges[*taken].to;
    apply(cur);
  }
  for (const auto& o : cfg.outputs) ex.outputs.push_back(state.at(o));
  return ex;
}

std::vector<bv::Term> symbolic_outputs(const Cfg& cfg) {
  using State = std::map<std::string, bv::Term>;
  const unsigned w = cfg.width;
  std::vector<State> after(cfg.nodes.size());
  std::vector<bv::Term> reach(cfg.nodes.size());
  auto apply = [&](State st, std::size_t n) {
    for (const auto& a : cfg.nodes[n].assignments) {
      st[a.var] = bv::substitute(a.value, [&](const std::string& name) -> std::optional<bv::Term> {
        auto it = st.find(name);
        if (it == st.end()) return std::nullopt;
        return it->second;
      });
    }
    return st;
  };
  for (std::size_t n : topological_order(cfg)) {
    State st;
    if (n == cfg.source) {
      for (const auto& in : cfg.inputs) st[in] = bv::var(in, w);
      for (const auto& l : cfg.locals) st[l] = bv::constant(0, w);
      reach[n] = bv::bool_const(true);
    } else {
      bool first = true;
      for (std::size_t e : cfg.in_edges(n)) {
        const auto& edge = cfg.edges[e];
        const State& from = after[edge.from];
        bv::Term pc = reach[edge.from];
        if (edge.cond)
          pc = bv::bvand(pc, bv::substitute(*edge.cond, [&](const std::string& name) -> std::optional<bv::Term> {
                 auto it = from.find(name);
                 if (it == from.end()) return std::nullopt;
                 return it->second;
               }));
        if (first) {
          st = from;
          reach[n] = pc;
          first = false;
          continue;
        }
        for (auto& [k, v] : st) v = bv::ite(pc, from.at(k), v);
        reach[n] = bv::bvor(reach[n], pc);
      }
    }
    after[n] = apply(std::move(st), n);
  }
  std::vector<bv::Term> out;
  for (const auto& o : cfg.outputs) out.push_back(after[cfg.sink].at(o));
  return out;
}

}  // namespace scid::frontend
