#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace scid::framework {

/// Names of the system S, environment E and specification; payloads live elsewhere.
struct ProblemInstance {
  std::string system_desc;
  std::string environment_desc;
  std::string spec_desc;

  void validate() const;
};

/// Feeds every artifact to the visitor until it returns false.
template <class T>
using Enumerator = std::function<void(const std::function<bool(const T&)>&)>;

struct StructureHypothesisDescriptor {
  std::string name;
  std::optional<std::uint64_t> artifact_space_size;
  /// Canonical text of each artifact in C_H.
  Enumerator<std::string> enumerator;
};

enum class ValidityStatus { Proved, CheckedByEnumeration, Assumed };
enum class RunOutcome { SoundResult, Unrealizable, Unknown };
enum class Validity { Valid, Invalid, Vacuous };

std::string_view to_string(ValidityStatus s);
std::string_view to_string(RunOutcome o);
std::string_view to_string(Validity v);
ValidityStatus parse_validity_status(std::string_view s);
RunOutcome parse_run_outcome(std::string_view s);

class EnumerationBudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Scans C_H for a satisfying artifact (VALID), then C_S (INVALID when one
/// exists there, VACUOUS otherwise).
template <class T>
Validity check_validity_by_enumeration(const Enumerator<T>& space_cs, const Enumerator<T>& space_ch,
                                       const std::function<bool(const T&)>& satisfies,
                                       std::uint64_t budget = std::uint64_t{1} << 34) {
  std::uint64_t visited = 0;
  auto scan = [&](const Enumerator<T>& space) {
    bool found = false;
    space([&](const T& c) {
      if (++visited > budget)
        throw EnumerationBudgetExceeded("validity check exceeded the enumeration budget of " +
                                        std::to_string(budget) + " artifacts");
      found = satisfies(c);
      return !found;
    });
    return found;
  };
  if (scan(space_ch)) return Validity::Valid;
  if (scan(space_cs)) return Validity::Invalid;
  return Validity::Vacuous;
}

/// Counts the artifacts of an enumerator and checks that they are pairwise distinct.
std::uint64_t count_distinct(const Enumerator<std::string>& e, std::uint64_t budget = 1'000'000);

struct AuditRecord {
  std::string hypothesis;
  std::optional<std::uint64_t> artifact_space_size;
  ValidityStatus validity_status = ValidityStatus::Assumed;
  RunOutcome run_outcome = RunOutcome::Unknown;
  bool waiver = false;
  std::string note;

  friend bool operator==(const AuditRecord&, const AuditRecord&) = default;
};

nlohmann::json to_json(const AuditRecord& r);
AuditRecord audit_from_json(const nlohmann::json& j);

class AuditViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Append-only, thread-safe record store; optionally mirrored to a JSONL file.
class AuditLog {
public:
  AuditLog() = default;
  explicit AuditLog(std::string path);

  void append(const AuditRecord& r);
  [[nodiscard]] std::vector<AuditRecord> records() const;
  void write_jsonl(std::ostream& os) const;

private:
  mutable std::mutex mu_;
  std::vector<AuditRecord> records_;
  std::string path_;
};

/// Builds, checks and appends a record. SOUND_RESULT under an ASSUMED
/// hypothesis needs an explicit waiver.
AuditRecord record_audit(AuditLog& log, const StructureHypothesisDescriptor& hypothesis, ValidityStatus status,
                         RunOutcome outcome, bool waiver = false, std::string note = {});

/// Parses a JSONL audit log and re-checks every record.
std::vector<AuditRecord> read_audit_log(std::istream& in);

}  // namespace scid::framework
