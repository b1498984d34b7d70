#include "toda/report.hpp"

#include <cmath>
#include <cstdio>

namespace toda {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0) return "0";  // folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_vector(const std::vector<double>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
  return s;
}

std::string format_params(const ParamMap& p) {
  std::string s;
  for (auto& [v, x] : p) s += (s.empty() ? "" : ";") + var_name(v) + "=" + format_double(x);
  return s;
}

void write_residual_header(std::ostream& os) {
  os << "# " << kReportFormat << "\n";
  os << "relation_id\tparams\tphi\tlhs\trhs\tabs_res\trel_res\n";
}

void write_residual_records(std::ostream& os, const ResidualReport& r) {
  const std::string params = format_params(r.params);
  for (auto& p : r.points) {
    os << r.id << '\t' << params << '\t' << format_vector(p.phi) << '\t' << format_double(p.lhs) << '\t'
       << format_double(p.rhs) << '\t' << format_double(p.abs_res) << '\t' << format_double(p.rel_res);
    if (!p.converged) os << "\tnot-converged " << p.error;
    os << '\n';
  }
}

void write_residual_summary(std::ostream& os, const ResidualReport& r) {
  os << "# summary\t" << r.id << '\t' << (r.pass ? "pass" : "fail") << "\tmax_rel=" << format_double(r.max_rel)
     << "\ttol=" << format_double(r.tol);
  if (!r.converged) os << "\tnot-converged";
  os << '\n';
}

void write_residual_report(std::ostream& os, const ResidualReport& r) {
  write_residual_header(os);
  write_residual_records(os, r);
  write_residual_summary(os, r);
}

void write_eval_header(std::ostream& os) {
  os << "# " << kReportFormat << "\n";
  os << "target\tinputs\tphi\tvalue\test_error\tmethod\n";
}

void write_eval_record(std::ostream& os, const std::string& target, const std::string& inputs, const EvalResult& r) {
  os << target << '\t' << inputs << '\t' << format_vector(r.phi) << '\t' << format_double(r.value) << '\t'
     << format_double(r.est_error) << '\t' << r.method;
  if (!r.converged) os << "\tnot-converged";
  os << '\n';
}

void write_erratum_table(std::ostream& os, const std::vector<ErratumEntry>& rows) {
  os << "# " << kReportFormat << "\n";
  os << "relation\tstatus\tdetail\n";
  for (auto& e : rows) os << e.relation << '\t' << e.status << '\t' << e.detail << '\n';
}

}  // namespace toda
