#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "scid/framework.hpp"
#include "scid/hybrid.hpp"
#include "scid/timing.hpp"

namespace scid::report {

struct RunReport {
  std::string subcommand;
  std::string inputs_digest;
  std::uint64_t seed = 0;
  nlohmann::json result;
  framework::AuditRecord audit;
  /// Left out of reports unless asked for, so identical runs give identical bytes.
  std::optional<double> wall_clock_seconds;

  [[nodiscard]] nlohmann::json to_json() const;
  static RunReport from_json(const nlohmann::json& j);
  friend bool operator==(const RunReport&, const RunReport&) = default;
};

/// FNV-1a over length-prefixed parts, as "fnv1a64:<hex>".
std::string digest(const std::vector<std::string>& parts);

std::string read_file(const std::string& path);
/// Writes text to a file; throws std::runtime_error when the path is unwritable.
void write_file(const std::string& path, const std::string& text);

/// path,predicted,actual with exact rational values.
void write_path_csv(std::ostream& os, const std::vector<timing::PathTiming>& rows);
/// trial,basis_path,time
void write_trials_csv(std::ostream& os, const timing::MeasurementLog& log);
/// t, every state variable, every definition, mode
void write_trace_csv(std::ostream& os, const hybrid::Mds& mds, const std::vector<hybrid::TraceSample>& samples);
/// transition,from,to,variable,lo,hi,reference_lo,reference_hi
void write_guard_csv(std::ostream& os, const hybrid::Mds& mds, const std::vector<hybrid::Guard>& guards, double grid,
                     const std::map<std::string, hybrid::RealInterval>& reference = {});
std::string guard_table(const hybrid::Mds& mds, const std::vector<hybrid::Guard>& guards, double grid,
                        const std::map<std::string, hybrid::RealInterval>& reference = {});

/// Largest endpoint distance from the reference for the named guard, over its single constrained variable.
std::optional<double> endpoint_deviation(const hybrid::Mds& mds, const std::vector<hybrid::Guard>& guards,
                                         double grid, const std::string& transition,
                                         const hybrid::RealInterval& reference);

/// Histogram of predicted (shaded) and measured (striped) path times.
std::string histogram_svg(const std::vector<timing::PathTiming>& rows);
/// Speed and every definition against time, with switch events marked.
std::string trace_svg(const hybrid::Mds& mds, const hybrid::ClosedLoopResult& run);

}  // namespace scid::report
