// Runs the invariant suites; pass suite names to select a subset.
#include <iostream>
#include <set>

#include "support/invariants.hpp"

using namespace scid::testing;

int main(int argc, char** argv) {
  const std::set<std::string> want(argv + 1, argv + argc);
  auto pick = [&](const char* key) { return want.empty() || want.count(key) > 0; };
  std::vector<SuiteResult> results;
  if (pick("flow")) results.push_back(flow_conservation_suite());
  if (pick("version-space")) results.push_back(version_space_suite());
  if (pick("guards")) results.push_back(guard_monotonicity_suite());
  if (pick("learner")) results.push_back(learned_box_suite());
  bool ok = !results.empty();
  for (const auto& r : results) {
    std::cout << (r.ok ? "PASS " : "FAIL ") << r.name << " (" << r.checks << " checks)";
    if (!r.ok) std::cout << ": " << r.detail;
    std::cout << "\n";
    ok = ok && r.ok;
  }
  if (results.empty()) std::cerr << "usage: scid_invariants [flow] [version-space] [guards] [learner]\n";
  return ok ? 0 : 1;
}
