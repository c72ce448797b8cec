#include "scid/framework.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>

namespace scid::framework {

void ProblemInstance::validate() const {
  if (system_desc.empty() || environment_desc.empty() || spec_desc.empty())
    throw std::invalid_argument("problem instance identifiers must be non-empty");
}

std::string_view to_string(ValidityStatus s) {
  switch (s) {
    case ValidityStatus::Proved: return "PROVED";
    case ValidityStatus::CheckedByEnumeration: return "CHECKED_BY_ENUMERATION";
    case ValidityStatus::Assumed: return "ASSUMED";
  }
  return "?";
}

std::string_view to_string(RunOutcome o) {
  switch (o) {
    case RunOutcome::SoundResult: return "SOUND_RESULT";
    case RunOutcome::Unrealizable: return "UNREALIZABLE";
    case RunOutcome::Unknown: return "UNKNOWN";
  }
  return "?";
}

std::string_view to_string(Validity v) {
  switch (v) {
    case Validity::Valid: return "VALID";
    case Validity::Invalid: return "INVALID";
    case Validity::Vacuous: return "VACUOUS";
  }
  return "?";
}

ValidityStatus parse_validity_status(std::string_view s) {
  if (s == "PROVED") return ValidityStatus::Proved;
  if (s == "CHECKED_BY_ENUMERATION") return ValidityStatus::CheckedByEnumeration;
  if (s == "ASSUMED") return ValidityStatus::Assumed;
  throw std::invalid_argument("unknown validity status '" + std::string(s) + "'");
}

RunOutcome parse_run_outcome(std::string_view s) {
  if (s == "SOUND_RESULT") return RunOutcome::SoundResult;
  if (s == "UNREALIZABLE") return RunOutcome::Unrealizable;
  if (s == "UNKNOWN") return RunOutcome::Unknown;
  throw std::invalid_argument("unknown run outcome '" + std::string(s) + "'");
}

std::uint64_t count_distinct(const Enumerator<std::string>& e, std::uint64_t budget) {
  std::set<std::string> seen;
  std::uint64_t n = 0;
  e([&](const std::string& s) {
    if (++n > budget) throw EnumerationBudgetExceeded("artifact enumeration exceeded its budget");
    if (!seen.insert(s).second) throw std::logic_error("enumerator yielded '" + s + "' twice");
    return true;
  });
  return n;
}

nlohmann::json to_json(const AuditRecord& r) {
  nlohmann::json j;
  j["hypothesis"] = r.hypothesis;
  j["artifact_space_size"] = r.artifact_space_size ? nlohmann::json(*r.artifact_space_size) : nlohmann::json();
  j["validity_status"] = std::string(to_string(r.validity_status));
  j["run_outcome"] = std::string(to_string(r.run_outcome));
  j["waiver"] = r.waiver;
  j["note"] = r.note;
  return j;
}

namespace {

void check(const AuditRecord& r) {
  if (r.hypothesis.empty()) throw std::invalid_argument("audit record needs a hypothesis name");
  if (r.validity_status == ValidityStatus::Assumed && r.run_outcome == RunOutcome::SoundResult && !r.waiver)
    throw AuditViolation("SOUND_RESULT claimed under the ASSUMED hypothesis '" + r.hypothesis +
                         "' without a waiver");
}

}  // namespace

AuditRecord audit_from_json(const nlohmann::json& j) {
  AuditRecord r;
  r.hypothesis = j.at("hypothesis").get<std::string>();
  if (j.contains("artifact_space_size") && !j.at("artifact_space_size").is_null())
    r.artifact_space_size = j.at("artifact_space_size").get<std::uint64_t>();
  r.validity_status = parse_validity_status(j.at("validity_status").get<std::string>());
  r.run_outcome = parse_run_outcome(j.at("run_outcome").get<std::string>());
  r.waiver = j.value("waiver", false);
  r.note = j.value("note", std::string());
  return r;
}

AuditLog::AuditLog(std::string path) : path_(std::move(path)) {}

void AuditLog::append(const AuditRecord& r) {
  std::lock_guard<std::mutex> lock(mu_);
  if (!path_.empty()) {
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("cannot append to audit log '" + path_ + "'");
    out << to_json(r).dump() << "\n";
  }
  records_.push_back(r);
}

std::vector<AuditRecord> AuditLog::records() const {
  std::lock_guard<std::mutex> lock(mu_);
  return records_;
}

void AuditLog::write_jsonl(std::ostream& os) const {
  std::lock_guard<std::mutex> lock(mu_);
  for (const auto& r : records_) os << to_json(r).dump() << "\n";
}

AuditRecord record_audit(AuditLog& log, const StructureHypothesisDescriptor& h, ValidityStatus status,
                         RunOutcome outcome, bool waiver, std::string note) {
  AuditRecord r;
  r.hypothesis = h.name;
  r.artifact_space_size = h.artifact_space_size;
  r.validity_status = status;
  r.run_outcome = outcome;
  r.waiver = waiver;
  r.note = std::move(note);
  check(r);
  log.append(r);
  return r;
}

std::vector<AuditRecord> read_audit_log(std::istream& in) {
  std::vector<AuditRecord> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      out.push_back(audit_from_json(nlohmann::json::parse(line)));
      check(out.back());
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument("audit log line " + std::to_string(n) + ": " + e.what());
    } catch (const AuditViolation& e) {
      throw AuditViolation("audit log line " + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace scid::framework
