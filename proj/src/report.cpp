#include "scid/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "scid/random.hpp"

namespace scid::report {

using nlohmann::json;

json RunReport::to_json() const {
  json j{{"subcommand", subcommand},
         {"inputs_digest", inputs_digest},
         {"seed", seed},
         {"result", result},
         {"audit", framework::to_json(audit)}};
  if (wall_clock_seconds) j["wall_clock_seconds"] = *wall_clock_seconds;
  return j;
}

RunReport RunReport::from_json(const json& j) {
  RunReport r;
  r.subcommand = j.at("subcommand").get<std::string>();
  r.inputs_digest = j.at("inputs_digest").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.result = j.at("result");
  r.audit = framework::audit_from_json(j.at("audit"));
  if (j.contains("wall_clock_seconds")) r.wall_clock_seconds = j.at("wall_clock_seconds").get<double>();
  return r;
}

std::string digest(const std::vector<std::string>& parts) {
  std::uint64_t h = fnv1a("");
  for (const auto& p : parts) {
    h = fnv1a(std::to_string(p.size()) + ":", h);
    h = fnv1a(p, h);
  }
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("error writing " + path);
}

void write_path_csv(std::ostream& os, const std::vector<timing::PathTiming>& rows) {
  os << "path,predicted,actual\n";
  for (const auto& r : rows) os << r.path_id << "," << to_string(r.predicted) << "," << to_string(r.actual) << "\n";
}

void write_trials_csv(std::ostream& os, const timing::MeasurementLog& log) {
  os << "trial,basis_path,time\n";
  for (std::size_t i = 0; i < log.trials.size(); ++i)
    os << i << "," << log.trials[i].index << "," << to_string(log.trials[i].time) << "\n";
}

namespace {

std::string num(double v, int precision = 6) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

std::string fixed(double v, int decimals) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(decimals) << v;
  return os.str();
}

int decimals_for(double grid) {
  int d = 0;
  while (d < 9 && std::fabs(grid - std::round(grid)) > 1e-9) {
    grid *= 10;
    ++d;
  }
  return d;
}

}  // namespace

void write_trace_csv(std::ostream& os, const hybrid::Mds& mds, const std::vector<hybrid::TraceSample>& samples) {
  const auto defs = mds.definition_names();
  os << "t";
  for (const auto& v : mds.vars) os << "," << v.name;
  for (const auto& d : defs) os << "," << d;
  os << ",mode\n";
  for (const auto& s : samples) {
    os << fixed(s.time, 4);
    for (double v : s.state) os << "," << num(v, 10);
    for (double v : s.defs) os << "," << (std::isnan(v) ? std::string() : num(v, 10));
    os << "," << mds.modes[s.mode].name << "\n";
  }
}

void write_guard_csv(std::ostream& os, const hybrid::Mds& mds, const std::vector<hybrid::Guard>& guards, double grid,
                     const std::map<std::string, hybrid::RealInterval>& reference) {
  const int dec = decimals_for(grid);
  os << "transition,from,to,variable,lo,hi,reference_lo,reference_hi\n";
  for (std::size_t i = 0; i < guards.size(); ++i) {
    const auto& t = mds.transitions[i];
    const std::string head = t.name + "," + mds.modes[t.from].name + "," + mds.modes[t.to].name + ",";
    if (guards[i].empty) {
      os << head << ",empty,empty,,\n";
      continue;
    }
    auto ref = reference.find(t.name);
    for (std::size_t d = 0; d < guards[i].dims.size(); ++d) {
      const auto& iv = guards[i].dims[d];
      if (!iv) continue;
      os << head << mds.vars[d].name << "," << fixed(static_cast<double>(iv->lo) * grid, dec) << ","
         << fixed(static_cast<double>(iv->hi) * grid, dec) << ",";
      // References constrain the last constrained variable (omega for the transmission).
      const bool last = std::none_of(guards[i].dims.begin() + static_cast<std::ptrdiff_t>(d) + 1,
                                     guards[i].dims.end(), [](const auto& x) { return x.has_value(); });
      if (ref != reference.end() && last) os << fixed(ref->second.lo, dec) << "," << fixed(ref->second.hi, dec);
      else os << ",";
      os << "\n";
    }
  }
}

std::optional<double> endpoint_deviation(const hybrid::Mds& mds, const std::vector<hybrid::Guard>& guards,
                                         double grid, const std::string& transition,
                                         const hybrid::RealInterval& reference) {
  for (std::size_t i = 0; i < guards.size(); ++i) {
    if (mds.transitions[i].name != transition) continue;
    if (guards[i].empty) return std::nullopt;
    std::optional<hybrid::GridInterval> iv;
    for (const auto& d : guards[i].dims)
      if (d) iv = d;
    if (!iv) return std::nullopt;
    return std::max(std::fabs(static_cast<double>(iv->lo) * grid - reference.lo),
                    std::fabs(static_cast<double>(iv->hi) * grid - reference.hi));
  }
  return std::nullopt;
}

std::string guard_table(const hybrid::Mds& mds, const std::vector<hybrid::Guard>& guards, double grid,
                        const std::map<std::string, hybrid::RealInterval>& reference) {
  const int dec = decimals_for(grid);
  std::ostringstream os;
  std::size_t width = 4;
  for (const auto& t : mds.transitions) width = std::max(width, t.name.size());
  for (std::size_t i = 0; i < guards.size(); ++i) {
    const auto& name = mds.transitions[i].name;
    std::string g = guards[i].to_string(mds.vars, grid);
    os << std::left << std::setw(static_cast<int>(width)) << name << "  ";
    auto ref = reference.find(name);
    if (ref == reference.end()) {
      os << g << "\n";
      continue;
    }
    os << std::setw(40) << g << "  reference [" << fixed(ref->second.lo, dec) << ", " << fixed(ref->second.hi, dec)
       << "]";
    if (auto dev = endpoint_deviation(mds, guards, grid, name, ref->second)) os << "  deviation " << fixed(*dev, dec);
    else os << "  deviation n/a";
    os << "\n";
  }
  return os.str();
}

}  // namespace scid::report
