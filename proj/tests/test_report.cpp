#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <unistd.h>

#include "scid/report.hpp"
#include "scid/runs.hpp"

using namespace scid;
using nlohmann::json;

namespace {

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::size_t count_char(const std::string& s, char c) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), c)); }

std::string temp_path(const std::string& stem) {
  return (std::filesystem::temp_directory_path() / (stem + "_" + std::to_string(::getpid()))).string();
}

}  // namespace

TEST_CASE("digest: format and sensitivity") {
  const auto d = report::digest({"a", "b"});
  CHECK(d.rfind("fnv1a64:", 0) == 0);
  CHECK(d.size() == 8 + 16);
  CHECK(d == report::digest({"a", "b"}));
  CHECK(d != report::digest({"ab"}));
  CHECK(d != report::digest({"b", "a"}));
  // FNV-1a 64 offset basis for the empty part list.
  CHECK(report::digest({}) == "fnv1a64:cbf29ce484222325");
}

TEST_CASE("run report JSON round trip") {
  report::RunReport r;
  r.subcommand = "gametime";
  r.inputs_digest = report::digest({"x"});
  r.seed = 9;
  r.result = json{{"answer", "YES"}, {"n", 3}};
  r.audit.hypothesis = "h";
  r.audit.validity_status = framework::ValidityStatus::Assumed;
  r.audit.run_outcome = framework::RunOutcome::SoundResult;
  r.audit.waiver = true;
  r.audit.note = "n";
  const auto j = r.to_json();
  CHECK_FALSE(j.contains("wall_clock_seconds"));
  CHECK(report::RunReport::from_json(j) == r);
  r.wall_clock_seconds = 1.5;
  CHECK(report::RunReport::from_json(r.to_json()) == r);
}

TEST_CASE("CSV writers") {
  SUBCASE("empty measurement log gives only the header") {
    std::ostringstream os;
    report::write_trials_csv(os, timing::MeasurementLog{});
    CHECK(os.str() == "trial,basis_path,time\n");
  }
  SUBCASE("trials are numbered") {
    timing::MeasurementLog log;
    log.trials = {{0, Rational(5)}, {1, Rational(7, 2)}};
    std::ostringstream os;
    report::write_trials_csv(os, log);
    const auto ls = lines_of(os.str());
    REQUIRE(ls.size() == 3);
    CHECK(ls[1] == "0,0,5");
    CHECK(ls[2] == "1,1,7/2");
  }
  SUBCASE("guard table has one row per constrained variable") {
    const auto m = hybrid::transmission();
    const auto g = hybrid::initial_guards(m, 0.01);
    std::ostringstream os;
    report::write_guard_csv(os, m, g, 0.01, hybrid::transmission_reference(false));
    const auto ls = lines_of(os.str());
    CHECK(ls[0] == "transition,from,to,variable,lo,hi,reference_lo,reference_hi");
    // g_1ND constrains both variables, the others only omega.
    CHECK(ls.size() == 1 + 11 + 2);
    for (std::size_t i = 1; i < ls.size(); ++i) CHECK(count_char(ls[i], ',') == 7);
    CHECK_FALSE(report::guard_table(m, g, 0.01).empty());
  }
  SUBCASE("trace columns follow the model") {
    const auto m = hybrid::transmission();
    hybrid::TraceSample s;
    s.time = 0.5;
    s.mode = m.mode_index("1U");
    s.state = {1, 2};
    s.defs = {0.25};
    std::ostringstream os;
    report::write_trace_csv(os, m, {s});
    const auto ls = lines_of(os.str());
    REQUIRE(ls.size() == 2);
    CHECK(ls[0] == "t,theta,omega,eta,mode");
    CHECK(ls[1].find("1U") != std::string::npos);
  }
}

TEST_CASE("endpoint deviation") {
  const auto m = hybrid::transmission();
  auto g = hybrid::initial_guards(m, 0.01);
  std::size_t k = 0;
  while (m.transitions[k].name != "g_12U") ++k;
  g[k].dims[1] = hybrid::GridInterval{1330, 2670};
  const auto d = report::endpoint_deviation(m, g, 0.01, "g_12U", {13.29, 26.70});
  REQUIRE(d.has_value());
  CHECK(*d == doctest::Approx(0.01));
  g[k] = hybrid::Guard::none(2);
  CHECK_FALSE(report::endpoint_deviation(m, g, 0.01, "g_12U", {13.29, 26.70}).has_value());
}

TEST_CASE("file helpers") {
  const auto p = temp_path("scid_report_file");
  report::write_file(p, "hello\n");
  CHECK(report::read_file(p) == "hello\n");
  std::filesystem::remove(p);
  CHECK_THROWS_AS(report::write_file("/nonexistent-dir/x/y.txt", "x"), std::runtime_error);
  CHECK_THROWS(report::read_file("/nonexistent-dir/x/y.txt"));
}

TEST_CASE("gametime run: reports are byte-identical and the path CSV covers every path") {
  runs::GametimeConfig c;
  c.program = "modexp.mc";
  c.platform = "uniform.json";
  c.seed = 3;
  const auto a = runs::run_gametime(c);
  const auto b = runs::run_gametime(c);
  CHECK(a.report.to_json().dump(2) == b.report.to_json().dump(2));
  CHECK(a.report.result["feasible_paths"] == 256);
  CHECK(a.report.result["basis"].size() == 9);
  std::ostringstream os;
  report::write_path_csv(os, a.distribution);
  const auto ls = lines_of(os.str());
  CHECK(ls[0] == "path,predicted,actual");
  CHECK(ls.size() == 257);
  c.seed = 4;
  CHECK(runs::run_gametime(c).report.inputs_digest != a.report.inputs_digest);
  const auto svg = report::histogram_svg(a.distribution);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("synth and switch runs produce reports") {
  runs::SynthConfig s;
  s.library = "mul45.json";
  s.oracle = "multiply45_obs.mc";
  const auto sr = runs::run_synth(s);
  CHECK(sr.report.result["status"] == "SUCCESS");
  CHECK(sr.report.result["equivalence"] == "EQUIVALENT");
  CHECK(sr.report.audit.run_outcome == framework::RunOutcome::SoundResult);
  s.oracle = "builtin:nope";
  CHECK_THROWS_AS(runs::run_synth(s), std::invalid_argument);

  runs::SwitchConfig w;
  framework::AuditLog log;
  const auto wr = runs::run_switch(w, &log);
  CHECK(wr.report.result["status"] == "SUCCESS");
  CHECK(wr.report.result["replay"]["safe"] == true);
  CHECK(wr.report.result["guards"].size() == 12);
  CHECK(log.records().size() == 1);
  const auto svg = report::trace_svg(wr.mds, *wr.replay);
  CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("benchmark lookup") {
  CHECK(std::filesystem::exists(runs::resolve_path("modexp.mc")));
  CHECK(runs::resolve_path("definitely-missing.mc") == "definitely-missing.mc");
}
