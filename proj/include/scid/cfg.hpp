#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "scid/ast.hpp"
#include "scid/bitvec.hpp"

namespace scid::frontend {

/// One straight-line update `var := value`. Values read the current state.
struct Assignment {
  std::string var;
  bv::Term value;
};

struct CfgNode {
  std::vector<Assignment> assignments;
};

/// Taken when `cond` (evaluated on the state after `from`) holds; then the
/// assignments of `to` apply. Parallel edges between two nodes are allowed.
struct CfgEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  std::optional<bv::Term> cond;
};

class BuildError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct BuildOptions {
  std::size_t node_budget = 1u << 16;
};

/// Loop-free control-flow graph of a whole program with calls inlined.
/// Node ids are a topological order; source is node 0 and sink the last node.
struct Cfg {
  unsigned width = 8;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  /// Every non-input variable that is assigned somewhere; all start at 0.
  std::vector<std::string> locals;
  std::vector<CfgNode> nodes;
  std::vector<CfgEdge> edges;
  std::size_t source = 0;
  std::size_t sink = 0;

  [[nodiscard]] std::size_t num_nodes() const { return nodes.size(); }
  [[nodiscard]] std::size_t num_edges() const { return edges.size(); }
  [[nodiscard]] std::vector<std::size_t> out_edges(std::size_t node) const;
  [[nodiscard]] std::vector<std::size_t> in_edges(std::size_t node) const;
  /// Number of source-to-sink paths, saturating at UINT64_MAX.
  [[nodiscard]] std::uint64_t path_count() const;
  /// m - n + 2, an upper bound on the basis size.
  [[nodiscard]] std::size_t cyclomatic_bound() const { return edges.size() - nodes.size() + 2; }
  [[nodiscard]] std::string to_dot() const;
};

Cfg build_dag(const Program& p, const BuildOptions& options = {});

/// Throws std::logic_error unless the graph is a DAG with a unique source and
/// sink through which every node is reachable.
void check_dag(const Cfg& cfg);

/// Node ids in Kahn order; throws std::logic_error on a cycle.
std::vector<std::size_t> topological_order(const Cfg& cfg);

struct Execution {
  std::vector<std::size_t> edges;
  std::vector<std::uint64_t> outputs;
};

/// Concrete execution through the DAG.
Execution walk(const Cfg& cfg, std::span<const std::uint64_t> inputs);

/// Outputs as terms over the input variables.
std::vector<bv::Term> symbolic_outputs(const Cfg& cfg);

}  // namespace scid::frontend
