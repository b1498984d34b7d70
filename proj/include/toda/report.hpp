#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "toda/evaluator.hpp"
#include "toda/relations.hpp"

namespace toda {

// Line-delimited text records, tab separated, with a fixed header. Doubles use %.17g so identical runs give
// identical bytes.
inline constexpr const char* kReportFormat = "toda-report 1";

std::string format_double(double x);
std::string format_vector(const std::vector<double>& v);  // comma separated
std::string format_params(const ParamMap& p);             // name=value;... in symbol order

void write_residual_header(std::ostream& os);
void write_residual_records(std::ostream& os, const ResidualReport& r);
// "# summary" line: id, pass/fail, max_rel, tol
void write_residual_summary(std::ostream& os, const ResidualReport& r);
void write_residual_report(std::ostream& os, const ResidualReport& r);

void write_eval_header(std::ostream& os);
void write_eval_record(std::ostream& os, const std::string& target, const std::string& inputs, const EvalResult& r);

void write_erratum_table(std::ostream& os, const std::vector<ErratumEntry>& rows);

}  // namespace toda
