#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "toda/relations.hpp"

namespace toda {

struct SuiteOptions {
  bool quick = false;
  int D = 8;  // truncation degree for the exact gates (quick uses 6)
  VerifyOptions verify;
  double sl2_tol = 1e-8;
  double sl3_tol = 1e-4;
  std::vector<int> only;  // criterion numbers; empty = all
};

struct GateResult {
  int number = 0;
  std::string name;
  bool pass = false;
  bool converged = true;
  std::vector<std::string> lines;  // one per sub-check, deterministic
  std::vector<ResidualReport> reports;
  double seconds = 0;  // not part of any report
};

inline constexpr int kCriteria = 9;

GateResult run_criterion(int number, const SuiteOptions& opt);
std::vector<GateResult> run_suite(const SuiteOptions& opt);

// Summary table and residual records; byte-identical for identical options.
void write_suite_report(std::ostream& os, const std::vector<GateResult>& gates);

}  // namespace toda
