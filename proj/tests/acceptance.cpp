// Acceptance gates. One line per criterion: "AC<k> <name>: PASS|FAIL (<seconds> s, limit <limit> s)".
// Usage: acceptance [k ...]   (no arguments runs all)
#include <cstdio>
#include <cstdlib>
#include <string>

#include "toda/suite.hpp"

using namespace toda;

namespace {
// seconds; 0 = no limit
double limit_for(int k) {
  switch (k) {
    case 1: return 5;
    case 2: return 180;
    case 4: return 120;
    case 8: return 600;
    default: return 0;
  }
}
}  // namespace

int main(int argc, char** argv) {
  SuiteOptions opt;
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty())
    for (int k = 1; k <= kCriteria; ++k) which.push_back(k);

  int failed = 0;
  for (int k : which) {
    GateResult g = run_criterion(k, opt);
    double lim = limit_for(k);
    bool in_time = lim == 0 || g.seconds < lim;
    bool ok = g.pass && in_time;
    for (auto& l : g.lines) std::printf("  %s\n", l.c_str());
    if (!in_time) std::printf("  runtime %.1f s over the %.0f s limit\n", g.seconds, lim);
    if (lim > 0)
      std::printf("AC%d %s: %s (%.1f s, limit %.0f s)\n", k, g.name.c_str(), ok ? "PASS" : "FAIL", g.seconds, lim);
    else
      std::printf("AC%d %s: %s (%.1f s)\n", k, g.name.c_str(), ok ? "PASS" : "FAIL", g.seconds);
    std::fflush(stdout);
    if (!ok) ++failed;
  }
  return failed ? 1 : 0;
}
