#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "scid/bitvec.hpp"
#include "scid/cfg.hpp"
#include "scid/rational.hpp"

namespace scid::paths {

using frontend::Cfg;

/// 0/1 edge-incidence vector of a source-to-sink path.
struct PathVector {
  std::vector<std::uint8_t> bits;

  PathVector() = default;
  explicit PathVector(std::size_t m) : bits(m, 0) {}
  static PathVector from_edges(std::size_t m, std::span<const std::size_t> edges);

  [[nodiscard]] std::size_t size() const { return bits.size(); }
  [[nodiscard]] std::vector<std::size_t> edges() const;
  [[nodiscard]] RationalRow to_row() const;
  /// Bits as a string of '0'/'1' in edge order.
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const PathVector&, const PathVector&) = default;
  friend auto operator<=>(const PathVector&, const PathVector&) = default;
};

/// Input values, one per entry parameter.
using Test = std::vector<std::uint64_t>;

/// Source out-flow 1, sink in-flow 1, every other node balanced with degree 0 or 1.
bool flow_conserving(const Cfg& cfg, const PathVector& p);

/// Edges of a flow-conserving vector in traversal order.
std::vector<std::size_t> edge_sequence(const Cfg& cfg, const PathVector& p);

/// Path condition over the input variables: satisfiable iff some input follows p.
bv::Formula path_to_formula(const Cfg& cfg, const PathVector& p);

class PathBudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Depth-first enumeration in edge-id order. The visitor returns false to stop.
void for_each_path(const Cfg& cfg, const std::function<bool(const PathVector&)>& visit,
                   std::size_t budget = std::size_t{1} << 20);
std::vector<PathVector> enumerate_paths(const Cfg& cfg, std::size_t budget = std::size_t{1} << 20);

/// Solves the path formula; returns an input driving execution down p.
std::optional<Test> feasible_test(const Cfg& cfg, const PathVector& p, const bv::SolverOptions& options = {});

struct BasisSet {
  std::vector<PathVector> paths;
  std::vector<Test> tests;

  [[nodiscard]] std::size_t size() const { return paths.size(); }
  [[nodiscard]] std::vector<RationalRow> lengths_matrix() const;
};

struct BasisOptions {
  std::size_t candidate_budget = std::size_t{1} << 16;
  bv::SolverOptions solver;
};

class BasisFailure : public std::runtime_error {
public:
  BasisFailure(const std::string& msg, std::size_t rank, std::vector<std::size_t> uncovered)
      : std::runtime_error(msg), rank_(rank), uncovered_(std::move(uncovered)) {}
  [[nodiscard]] std::size_t rank() const { return rank_; }
  [[nodiscard]] const std::vector<std::size_t>& uncovered_edges() const { return uncovered_; }

private:
  std::size_t rank_;
  std::vector<std::size_t> uncovered_;
};

BasisSet extract_feasible_basis(const Cfg& cfg, const BasisOptions& options = {});

/// Coefficients expressing p in the basis, or nullopt when p is outside its span.
std::optional<RationalRow> express_in_basis(const BasisSet& basis, const PathVector& p);

/// Throws std::logic_error unless the basis rows are independent and every test replays its path.
void check_basis(const Cfg& cfg, const BasisSet& basis);

}  // namespace scid::paths
