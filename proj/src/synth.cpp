#include "scid/synth.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "scid/random.hpp"

namespace scid::synth {

bv::Term Component::apply(std::span<const bv::Term> args) const {
  if (args.size() != arity) throw std::invalid_argument("component '" + name + "': wrong number of operands");
  return bv::substitute(semantics, [&](const std::string& v) -> std::optional<bv::Term> {
    if (v.rfind("in", 0) != 0) return std::nullopt;
    const auto i = static_cast<std::size_t>(std::stoul(v.substr(2)));
    return args[i];
  });
}

std::uint64_t Component::eval(std::span<const std::uint64_t> args) const {
  bv::Model m;
  for (std::size_t i = 0; i < args.size(); ++i) m["in" + std::to_string(i)] = args[i];
  return bv::evaluate(semantics, m);
}

namespace {

std::optional<unsigned> suffix_number(const std::string& name, const std::string& prefix) {
  if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
  const std::string rest = name.substr(prefix.size());
  if (!std::all_of(rest.begin(), rest.end(), [](char c) { return c >= '0' && c <= '9'; })) return std::nullopt;
  if (rest.size() > 19) return std::nullopt;
  const unsigned long long v = std::stoull(rest);
  if (v > 0xffffffffULL) return std::nullopt;
  return static_cast<unsigned>(v);
}

}  // namespace

Component make_component(const std::string& name, unsigned width) {
  const bv::Term a = bv::var("in0", width);
  const bv::Term b = bv::var("in1", width);
  const bv::Term c = bv::var("in2", width);
  Component k;
  k.name = name;
  k.width = width;
  auto binary = [&](bv::Term t) {
    k.arity = 2;
    k.semantics = std::move(t);
  };
  if (name == "xor") binary(a ^ b);
  else if (name == "and") binary(a & b);
  else if (name == "or") binary(a | b);
  else if (name == "add") binary(a + b);
  else if (name == "sub") binary(a - b);
  else if (name == "mul") binary(a * b);
  else if (name == "not") {
    k.arity = 1;
    k.semantics = ~a;
  } else if (name == "wire") {
    k.arity = 1;
    k.semantics = a;
  } else if (name == "ite") {
    k.arity = 3;
    k.semantics = bv::ite(bv::ne(a, bv::constant(0, width)), b, c);
  } else if (auto s = suffix_number(name, "shl")) {
    if (*s >= width) throw std::invalid_argument("component '" + name + "': shift amount must be below the width");
    k.arity = 1;
    k.semantics = bv::shl(a, *s);
  } else if (auto s2 = suffix_number(name, "lshr")) {
    if (*s2 >= width) throw std::invalid_argument("component '" + name + "': shift amount must be below the width");
    k.arity = 1;
    k.semantics = bv::lshr(a, *s2);
  } else if (auto v = suffix_number(name, "const")) {
    k.arity = 0;
    k.semantics = bv::constant(*v, width);
  } else {
    throw std::invalid_argument("unknown component '" + name +
                                "' (expected xor, and, or, not, add, sub, mul, wire, ite, shlK, lshrK, constK)");
  }
  return k;
}

void ComponentLibrary::validate() const {
  if (components.empty()) throw std::invalid_argument("component library is empty");
  if (width < 1 || width > 64) throw std::invalid_argument("library width must be in [1, 64]");
  if (outputs < 1) throw std::invalid_argument("library needs at least one output");
  for (const auto& c : components)
    if (c.width != width) throw std::invalid_argument("component '" + c.name + "' has a different width");
}

std::string ComponentLibrary::describe() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < components.size(); ++i) os << (i ? "," : "") << components[i].name;
  os << "} inputs=" << inputs << " outputs=" << outputs << " width=" << width;
  if (outputs_from_lines) os << " outputs-from-lines";
  if (distinct_operands) os << " distinct-operands";
  return os.str();
}

ComponentLibrary make_library(const std::vector<std::string>& names, std::size_t inputs, std::size_t outputs,
                              unsigned width, bool outputs_from_lines) {
  ComponentLibrary lib;
  lib.outputs_from_lines = outputs_from_lines;
  lib.inputs = inputs;
  lib.outputs = outputs;
  lib.width = width;
  for (const auto& n : names) lib.components.push_back(make_component(n, width));
  lib.validate();
  return lib;
}

bool well_formed(const ComponentLibrary& lib, const ProgramCandidate& prog) {
  if (prog.lines.size() != lib.components.size() || prog.outputs.size() != lib.outputs) return false;
  std::vector<char> used(lib.components.size(), 0);
  for (std::size_t k = 0; k < prog.lines.size(); ++k) {
    const Line& l = prog.lines[k];
    if (l.component >= lib.components.size() || used[l.component]) return false;
    used[l.component] = 1;
    if (l.operands.size() != lib.components[l.component].arity) return false;
    for (std::size_t j = 0; j < l.operands.size(); ++j) {
      if (l.operands[j] >= lib.inputs + k) return false;
      if (lib.distinct_operands)
        for (std::size_t q = 0; q < j; ++q)
          if (l.operands[q] == l.operands[j]) return false;
    }
  }
  for (auto o : prog.outputs)
    if (o >= lib.inputs + prog.lines.size() || (lib.outputs_from_lines && o < lib.inputs)) return false;
  return true;
}

Values interpret(const ComponentLibrary& lib, const ProgramCandidate& prog, std::span<const std::uint64_t> inputs) {
  if (inputs.size() != lib.inputs) throw std::invalid_argument("interpret: wrong number of inputs");
  const std::uint64_t m = bv::mask(lib.width);
  Values loc;
  for (auto v : inputs) loc.push_back(v & m);
  Values args;
  for (const Line& l : prog.lines) {
    args.clear();
    for (auto op : l.operands) args.push_back(loc.at(op));
    loc.push_back(lib.components.at(l.component).eval(args));
  }
  Values out;
  for (auto o : prog.outputs) out.push_back(loc.at(o));
  return out;
}

std::vector<bv::Term> symbolic(const ComponentLibrary& lib, const ProgramCandidate& prog,
                               std::span<const bv::Term> inputs) {
  std::vector<bv::Term> loc(inputs.begin(), inputs.end());
  for (const Line& l : prog.lines) {
    std::vector<bv::Term> args;
    for (auto op : l.operands) args.push_back(loc.at(op));
    loc.push_back(lib.components.at(l.component).apply(args));
  }
  std::vector<bv::Term> out;
  for (auto o : prog.outputs) out.push_back(loc.at(o));
  return out;
}

std::string to_source(const ComponentLibrary& lib, const ProgramCandidate& prog) {
  auto name = [&](std::size_t loc) {
    return loc < lib.inputs ? "x" + std::to_string(loc) : "v" + std::to_string(loc - lib.inputs);
  };
  std::ostringstream os;
  for (std::size_t k = 0; k < prog.lines.size(); ++k) {
    const Line& l = prog.lines[k];
    os << name(lib.inputs + k) << " = " << lib.components[l.component].name << "(";
    for (std::size_t j = 0; j < l.operands.size(); ++j) os << (j ? ", " : "") << name(l.operands[j]);
    os << ")\n";
  }
  os << "return";
  for (std::size_t k = 0; k < prog.outputs.size(); ++k) os << (k ? ", " : " ") << name(prog.outputs[k]);
  os << "\n";
  return os.str();
}

bool consistent(const ComponentLibrary& lib, const ProgramCandidate& prog, std::span<const IoExample> examples) {
  for (const auto& e : examples)
    if (interpret(lib, prog, e.inputs) != e.outputs) return false;
  return true;
}

namespace {

// Location variables of one program copy.
struct Locations {
  std::string prefix;
  unsigned lw = 1;
  std::vector<bv::Term> out;                 // O_i per component
  std::vector<std::vector<bv::Term>> opnd;   // A_ij
  std::vector<bv::Term> result;              // R_k per program output
};

Locations make_locations(const ComponentLibrary& lib, const std::string& prefix, bv::Formula& f) {
  const std::size_t n = lib.components.size();
  const std::size_t total = lib.inputs + n;
  Locations L;
  L.prefix = prefix;
  L.lw = std::max(1u, static_cast<unsigned>(std::bit_width(total)));
  auto c = [&](std::size_t v) { return bv::constant(v, L.lw); };
  for (std::size_t i = 0; i < n; ++i) {
    L.out.push_back(bv::var(prefix + "O" + std::to_string(i), L.lw));
    f.add(bv::uge(L.out[i], c(lib.inputs)));
    f.add(bv::ult(L.out[i], c(total)));
    std::vector<bv::Term> ops;
    for (unsigned j = 0; j < lib.components[i].arity; ++j) {
      ops.push_back(bv::var(prefix + "A" + std::to_string(i) + "_" + std::to_string(j), L.lw));
      f.add(bv::ult(ops.back(), L.out[i]));
      if (lib.distinct_operands)
        for (unsigned q = 0; q < j; ++q) f.add(bv::ne(ops[q], ops[j]));
    }
    L.opnd.push_back(std::move(ops));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k) f.add(bv::ne(L.out[i], L.out[k]));
  for (std::size_t r = 0; r < lib.outputs; ++r) {
    L.result.push_back(bv::var(prefix + "R" + std::to_string(r), L.lw));
    f.add(bv::ult(L.result.back(), c(total)));
    if (lib.outputs_from_lines) f.add(bv::uge(L.result.back(), c(lib.inputs)));
  }
  return L;
}

// Dataflow of one copy on one input vector; returns the output value terms.
std::vector<bv::Term> behavior(const ComponentLibrary& lib, const Locations& L, const std::string& tag,
                               std::span<const bv::Term> inputs, bv::Formula& f) {
  const std::size_t n = lib.components.size();
  const unsigned w = lib.width;
  auto c = [&](std::size_t v) { return bv::constant(v, L.lw); };
  std::vector<std::vector<bv::Term>> a(n);
  std::vector<bv::Term> y;
  for (std::size_t i = 0; i < n; ++i) {
    for (unsigned j = 0; j < lib.components[i].arity; ++j)
      a[i].push_back(bv::var(L.prefix + tag + "a" + std::to_string(i) + "_" + std::to_string(j), w));
    y.push_back(lib.components[i].apply(a[i]));
  }
  auto connect = [&](const bv::Term& loc, const bv::Term& value) {
    for (std::size_t t = 0; t < lib.inputs; ++t) f.add(bv::implies(bv::eq(loc, c(t)), bv::eq(value, inputs[t])));
    for (std::size_t k = 0; k < n; ++k) f.add(bv::implies(bv::eq(loc, L.out[k]), bv::eq(value, y[k])));
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) connect(L.opnd[i][j], a[i][j]);
  std::vector<bv::Term> outs;
  for (std::size_t r = 0; r < lib.outputs; ++r) {
    outs.push_back(bv::var(L.prefix + tag + "o" + std::to_string(r), w));
    connect(L.result[r], outs.back());
  }
  return outs;
}

void add_examples(const ComponentLibrary& lib, const Locations& L, std::span<const IoExample> examples,
                  bv::Formula& f) {
  for (std::size_t e = 0; e < examples.size(); ++e) {
    const auto& ex = examples[e];
    if (ex.inputs.size() != lib.inputs || ex.outputs.size() != lib.outputs)
      throw std::invalid_argument("example arity does not match the library");
    std::vector<bv::Term> in;
    for (auto v : ex.inputs) in.push_back(bv::constant(v, lib.width));
    const auto outs = behavior(lib, L, "e" + std::to_string(e) + ".", in, f);
    for (std::size_t r = 0; r < outs.size(); ++r) f.add(bv::eq(outs[r], bv::constant(ex.outputs[r], lib.width)));
  }
}

std::uint64_t model_value(const bv::Model& m, const bv::Term& v) {
  auto it = m.find(v.name());
  return it == m.end() ? 0 : it->second;
}

ProgramCandidate decode(const ComponentLibrary& lib, const Locations& L, const bv::Model& m) {
  const std::size_t n = lib.components.size();
  ProgramCandidate p;
  p.lines.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t line = model_value(m, L.out[i]) - lib.inputs;
    p.lines.at(line).component = i;
    for (const auto& op : L.opnd[i]) p.lines[line].operands.push_back(model_value(m, op));
  }
  for (const auto& r : L.result) p.outputs.push_back(model_value(m, r));
  return p;
}

std::vector<bv::Term> pin(const ComponentLibrary& lib, const Locations& L, const ProgramCandidate& prog) {
  std::vector<bv::Term> as;
  for (std::size_t k = 0; k < prog.lines.size(); ++k) {
    const Line& line = prog.lines[k];
    as.push_back(bv::eq(L.out[line.component], bv::constant(lib.inputs + k, L.lw)));
    for (std::size_t j = 0; j < line.operands.size(); ++j)
      as.push_back(bv::eq(L.opnd[line.component][j], bv::constant(line.operands[j], L.lw)));
  }
  for (std::size_t r = 0; r < prog.outputs.size(); ++r)
    as.push_back(bv::eq(L.result[r], bv::constant(prog.outputs[r], L.lw)));
  return as;
}

}  // namespace

std::optional<ProgramCandidate> synthesize_consistent(const ComponentLibrary& lib, std::span<const IoExample> examples,
                                                      const SynthOptions& options) {
  lib.validate();
  bv::Formula f;
  const Locations L = make_locations(lib, "", f);
  add_examples(lib, L, examples, f);
  const auto r = bv::solve(f, options.solver);
  if (!r.sat()) return std::nullopt;
  ProgramCandidate p = decode(lib, L, r.model);
  if (!well_formed(lib, p) || !consistent(lib, p, examples))
    throw std::logic_error("synthesized program does not re-verify against the examples");
  return p;
}

std::optional<Distinguishing> find_distinguishing_input(const ComponentLibrary& lib,
                                                        std::span<const IoExample> examples,
                                                        const ProgramCandidate& prog, const SynthOptions& options) {
  lib.validate();
  if (!well_formed(lib, prog)) throw std::invalid_argument("find_distinguishing_input: program is not well formed");
  bv::Formula f;
  const Locations A = make_locations(lib, "A.", f);
  const Locations B = make_locations(lib, "B.", f);
  add_examples(lib, A, examples, f);
  add_examples(lib, B, examples, f);
  std::vector<bv::Term> z;
  for (std::size_t t = 0; t < lib.inputs; ++t) z.push_back(bv::var("z" + std::to_string(t), lib.width));
  const auto oa = behavior(lib, A, "z.", z, f);
  const auto ob = behavior(lib, B, "z.", z, f);
  std::vector<bv::Term> differ;
  for (std::size_t r = 0; r < oa.size(); ++r) differ.push_back(bv::ne(oa[r], ob[r]));
  f.add(bv::disjunction(differ));
  const auto assumptions = pin(lib, A, prog);
  const auto res = bv::solve_under(f, assumptions, options.solver);
  if (!res.sat()) return std::nullopt;
  Distinguishing d;
  for (const auto& v : z) d.input.push_back(model_value(res.model, v));
  d.alternative = decode(lib, B, res.model);
  if (!well_formed(lib, d.alternative) || !consistent(lib, d.alternative, examples) ||
      interpret(lib, d.alternative, d.input) == interpret(lib, prog, d.input))
    throw std::logic_error("distinguishing input does not re-verify");
  return d;
}

std::string_view status_name(SynthStatus s) {
  switch (s) {
    case SynthStatus::Success: return "SUCCESS";
    case SynthStatus::Unrealizable: return "UNREALIZABLE";
    case SynthStatus::Budget: return "BUDGET";
  }
  return "?";
}

std::string_view status_name(EquivalenceStatus s) {
  switch (s) {
    case EquivalenceStatus::Equivalent: return "EQUIVALENT";
    case EquivalenceStatus::Counterexample: return "COUNTEREXAMPLE";
    case EquivalenceStatus::Uncheckable: return "UNCHECKABLE";
  }
  return "?";
}

namespace {

void check_oracle(const ComponentLibrary& lib, const Oracle& o) {
  if (o.inputs != lib.inputs || o.outputs != lib.outputs || o.width != lib.width)
    throw std::invalid_argument("oracle '" + o.name + "' (" + std::to_string(o.inputs) + " in, " +
                                std::to_string(o.outputs) + " out, width " + std::to_string(o.width) +
                                ") does not match the library " + lib.describe());
}

IoExample query(const Oracle& o, Values in) {
  IoExample e;
  e.outputs = o(in);
  e.inputs = std::move(in);
  return e;
}

}  // namespace

SynthesisResult ogis_loop(const ComponentLibrary& lib, const Oracle& oracle, std::uint64_t seed,
                          const OgisOptions& options) {
  lib.validate();
  check_oracle(lib, oracle);
  SynthesisResult res;
  Rng rng(derive_seed(seed, "ogis-initial"));
  Values first;
  for (std::size_t t = 0; t < lib.inputs; ++t) first.push_back(rng.next() & bv::mask(lib.width));
  res.queries.push_back(query(oracle, first));
  while (res.iterations < options.max_iters) {
    ++res.iterations;
    if (options.count_version_space)
      res.version_space.push_back(count_consistent(lib, res.queries, options.enumeration_budget));
    auto prog = synthesize_consistent(lib, res.queries, options.synth);
    if (!prog) {
      res.status = SynthStatus::Unrealizable;
      return res;
    }
    auto d = find_distinguishing_input(lib, res.queries, *prog, options.synth);
    if (!d) {
      res.status = SynthStatus::Success;
      res.program = std::move(prog);
      return res;
    }
    res.queries.push_back(query(oracle, d->input));
  }
  res.status = SynthStatus::Budget;
  return res;
}

EquivalenceResult verify_equivalence(const ComponentLibrary& lib, const ProgramCandidate& prog, const Oracle& oracle,
                                     unsigned exhaustive_bits) {
  check_oracle(lib, oracle);
  EquivalenceResult r;
  const std::size_t bits = lib.inputs * lib.width;
  if (bits <= exhaustive_bits) {
    const std::uint64_t m = bv::mask(lib.width);
    Values in(lib.inputs, 0);
    for (;;) {
      if (interpret(lib, prog, in) != oracle(in)) {
        r.status = EquivalenceStatus::Counterexample;
        r.counterexample = in;
        return r;
      }
      std::size_t t = 0;
      while (t < in.size() && in[t] == m) in[t++] = 0;
      if (t == in.size()) break;
      ++in[t];
    }
    r.status = EquivalenceStatus::Equivalent;
    return r;
  }
  if (!oracle.symbolic) return r;
  std::vector<bv::Term> vars;
  for (const auto& n : oracle.input_names) vars.push_back(bv::var(n, lib.width));
  const auto mine = symbolic(lib, prog, vars);
  std::vector<bv::Term> differ;
  for (std::size_t k = 0; k < mine.size(); ++k) differ.push_back(bv::ne(mine[k], (*oracle.symbolic)[k]));
  bv::Formula f;
  f.add(bv::disjunction(differ));
  const auto s = bv::solve(f);
  if (!s.sat()) {
    r.status = EquivalenceStatus::Equivalent;
    return r;
  }
  Values in;
  for (const auto& v : vars) in.push_back(model_value(s.model, v));
  if (interpret(lib, prog, in) == oracle(in))
    throw std::logic_error("symbolic oracle disagrees with the concrete oracle");
  r.status = EquivalenceStatus::Counterexample;
  r.counterexample = std::move(in);
  return r;
}

void enumerate_programs(const ComponentLibrary& lib, const std::function<bool(const ProgramCandidate&)>& visit,
                        std::size_t budget) {
  const std::size_t n = lib.components.size();
  const std::size_t total = lib.inputs + n;
  ProgramCandidate p;
  p.lines.resize(n);
  p.outputs.assign(lib.outputs, 0);
  std::vector<char> used(n, 0);
  std::size_t produced = 0;
  bool stop = false;

  std::function<void(std::size_t)> outputs = [&](std::size_t r) {
    if (stop) return;
    if (r == lib.outputs) {
      if (++produced > budget)
        throw EnumerationBudgetExceeded("program enumeration exceeded the budget of " + std::to_string(budget));
      stop = !visit(p);
      return;
    }
    for (std::size_t l = lib.outputs_from_lines ? lib.inputs : 0; l < total && !stop; ++l) {
      p.outputs[r] = l;
      outputs(r + 1);
    }
  };
  std::function<void(std::size_t, std::size_t)> operands;
  std::function<void(std::size_t)> line = [&](std::size_t k) {
    if (stop) return;
    if (k == n) {
      outputs(0);
      return;
    }
    for (std::size_t c = 0; c < n && !stop; ++c) {
      if (used[c]) continue;
      used[c] = 1;
      p.lines[k].component = c;
      p.lines[k].operands.assign(lib.components[c].arity, 0);
      operands(k, 0);
      used[c] = 0;
    }
  };
  operands = [&](std::size_t k, std::size_t j) {
    if (stop) return;
    if (j == p.lines[k].operands.size()) {
      line(k + 1);
      return;
    }
    for (std::size_t l = 0; l < lib.inputs + k && !stop; ++l) {
      if (lib.distinct_operands &&
          std::find(p.lines[k].operands.begin(), p.lines[k].operands.begin() + static_cast<std::ptrdiff_t>(j), l) !=
              p.lines[k].operands.begin() + static_cast<std::ptrdiff_t>(j))
        continue;
      p.lines[k].operands[j] = l;
      operands(k, j + 1);
    }
  };
  line(0);
}

std::size_t count_consistent(const ComponentLibrary& lib, std::span<const IoExample> examples, std::size_t budget) {
  std::size_t count = 0;
  enumerate_programs(
      lib,
      [&](const ProgramCandidate& p) {
        if (consistent(lib, p, examples)) ++count;
        return true;
      },
      budget);
  return count;
}

namespace {

std::size_t table_rows(std::size_t inputs, unsigned width) {
  if (inputs * width > 20) throw std::invalid_argument("truth tables are limited to 20 input bits");
  return std::size_t{1} << (inputs * width);
}

template <class F>
TruthTable tabulate(std::size_t inputs, unsigned width, F&& f) {
  const std::size_t rows = table_rows(inputs, width);
  TruthTable t;
  Values in(inputs);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t k = 0; k < inputs; ++k) in[k] = (r >> (k * width)) & bv::mask(width);
    for (auto v : f(in)) t.push_back(v);
  }
  return t;
}

}  // namespace

TruthTable truth_table(const ComponentLibrary& lib, const ProgramCandidate& prog) {
  return tabulate(lib.inputs, lib.width, [&](const Values& in) { return interpret(lib, prog, in); });
}

TruthTable truth_table(const Oracle& oracle) {
  return tabulate(oracle.inputs, oracle.width, [&](const Values& in) { return oracle(in); });
}

framework::Enumerator<TruthTable> program_space(const ComponentLibrary& lib, std::size_t budget) {
  return [lib, budget](const std::function<bool(const TruthTable&)>& visit) {
    enumerate_programs(
        lib, [&](const ProgramCandidate& p) { return visit(truth_table(lib, p)); }, budget);
  };
}

framework::Enumerator<TruthTable> function_space(std::size_t inputs, std::size_t outputs, unsigned width,
                                                std::optional<TruthTable> first) {
  const std::size_t entries = table_rows(inputs, width) * outputs;
  const std::uint64_t top = bv::mask(width);
  if (first && first->size() != entries) throw std::invalid_argument("function_space: leading table has the wrong size");
  return [entries, top, first](const std::function<bool(const TruthTable&)>& visit) {
    if (first && !visit(*first)) return;
    TruthTable t(entries, 0);
    for (;;) {
      if ((!first || t != *first) && !visit(t)) return;
      std::size_t i = 0;
      while (i < entries && t[i] == top) t[i++] = 0;
      if (i == entries) return;
      ++t[i];
    }
  };
}

framework::StructureHypothesisDescriptor components_hypothesis(const ComponentLibrary& lib,
                                                               std::size_t count_budget) {
  framework::StructureHypothesisDescriptor h;
  h.name = "loop-free compositions of " + lib.describe();
  h.enumerator = [lib](const std::function<bool(const std::string&)>& visit) {
    enumerate_programs(lib, [&](const ProgramCandidate& p) {
      std::ostringstream os;
      for (const auto& l : p.lines) {
        os << l.component << "(";
        for (auto o : l.operands) os << o << ",";
        os << ");";
      }
      os << "->";
      for (auto o : p.outputs) os << o << ",";
      return visit(os.str());
    });
  };
  try {
    std::uint64_t n = 0;
    enumerate_programs(
        lib,
        [&](const ProgramCandidate&) {
          ++n;
          return true;
        },
        count_budget);
    h.artifact_space_size = n;
  } catch (const EnumerationBudgetExceeded&) {
  }
  return h;
}

framework::Validity check_library_validity(const ComponentLibrary& lib, const Oracle& oracle, std::uint64_t budget) {
  check_oracle(lib, oracle);
  const TruthTable target = truth_table(oracle);
  return framework::check_validity_by_enumeration<TruthTable>(
      function_space(lib.inputs, lib.outputs, lib.width, target), program_space(lib, budget),
      [&](const TruthTable& t) { return t == target; }, budget);
}

}  // namespace scid::synth
