#include "toda/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "toda/evaluator.hpp"
#include "toda/images.hpp"
#include "toda/intertwiners.hpp"
#include "toda/quadrature.hpp"
#include "toda/report.hpp"
#include "toda/sln_search.hpp"
#include "toda/whittaker.hpp"

namespace toda {

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

void add(GateResult& g, const std::string& what, bool pass, const std::string& detail = "") {
  g.lines.push_back(what + "\t" + (pass ? "pass" : "fail") + (detail.empty() ? "" : "\t" + detail));
  if (!pass) g.pass = false;
}

void add_report(GateResult& g, const ResidualReport& r) {
  std::string d = "max_rel=" + sci(r.max_rel) + " tol=" + sci(r.tol) + " points=" + std::to_string(r.points.size());
  if (!r.converged) {
    d += " not-converged";
    g.converged = false;
  }
  add(g, r.id, r.pass, d);
  g.reports.push_back(r);
}

ResidualReport run_relation(const std::string& id, const SuiteOptions& opt, double tol, bool series_branch = false) {
  RelationSpec r = make_relation(id);
  if (series_branch) {
    r.branch = Branch::series;
    r.id += "_SERIES_BRANCH";
  }
  return verify(r, default_params(id), standard_grid(r, opt.quick), tol, opt.verify);
}

// 2 a^{(l+1)/2} e^{-phi} K_{l+1}(2 sqrt(a) e^{-phi}) / Gamma(l+1)
double k_form(double l, double a, double phi) {
  double z = 2 * std::sqrt(a) * std::exp(-phi);
  return 2 * std::pow(a, (l + 1) / 2) * std::exp(-phi) * std::cyl_bessel_k(std::fabs(l + 1), z) / std::tgamma(l + 1);
}

void macdonald(GateResult& g, const SuiteOptions&) {
  double worst = 0;
  bool conv = true;
  int count = 0;
  for (double l : {-0.5, 0.3, 1.0, 2.5, 4.0})
    for (double mu : {0.5, 1.0, 2.0})
      for (double phi : {-0.5, 0.0, 1.0}) {
        NumericSpec s{2, {l}, {mu}, {mu}};
        EvalResult r = eval_integral_sl2(s, phi, QuadratureSpec{1e-13, 12});
        conv = conv && r.converged;
        worst = std::max(worst, relative_residual(r.value, k_form(l, mu * mu, phi)));
        ++count;
      }
  if (!conv) g.converged = false;
  add(g, "integral vs Bessel K form, " + std::to_string(count) + " points", worst <= 1e-10 && conv,
      "max_rel=" + sci(worst) + " tol=1.00e-10");
}

void toda_equations(GateResult& g, const SuiteOptions& opt) {
  add_report(g, run_relation("TODA_SL2", opt, opt.sl2_tol, true));
  add_report(g, run_relation("TODA_SL2", opt, 1e-6));
  add_report(g, run_relation("TODA_SL3", opt, opt.sl3_tol));
  add_report(g, run_relation("TODA_SLN_QUADRATIC", opt, opt.sl3_tol));
}

Poly vacuum_casimir(int n) {
  UEAElement v = verma_reduce(casimir2(n), symbolic_weight(n, VarKind::lambda));
  Poly out;
  for (auto& [m, c] : v.terms()) {
    bool unit = true;
    for (auto e : m) unit = unit && e == 0;
    if (!unit) throw std::logic_error("Casimir does not act by a scalar on the vacuum");
    out += c;
  }
  return out;
}

void casimir_scalars(GateResult& g, const SuiteOptions&) {
  Poly l = Poly::var(lam(1)), l1 = Poly::var(lam(1)), l2 = Poly::var(lam(2));
  Poly e2 = l * l * Rational(1, 2) + l;
  Poly e3 = Poly(2) * l1 + Poly(2) * l2 + (l1 * l1 + l2 * l2 + l1 * l2) * Rational(2, 3);
  Poly v2 = vacuum_casimir(2), v3 = vacuum_casimir(3);
  add(g, "casimir2 on V_l vacuum, n=2", v2 == e2, v2.str());
  add(g, "casimir2 on V_l vacuum, n=3", v3 == e3, v3.str());
  for (int n = 2; n <= 4; ++n) {
    Poly s = casimir_scalar(n, symbolic_weight(n, VarKind::lambda));
    add(g, "casimir_scalar = vacuum action, n=" + std::to_string(n), s == vacuum_casimir(n));
  }
}

void equivariance(GateResult& g, const SuiteOptions& opt) {
  for (const auto& id : map_ids()) {
    if (id == "SL2_CG_K" || id.find("PRINTED") != std::string::npos) continue;
    EquivarianceReport r = check_equivariance(build_map(id), opt.D);
    add(g, id + " D=" + std::to_string(opt.D), r.pass, r.pass ? "" : r.failure);
  }
  for (int k = 1; k <= 3; ++k) {
    EquivarianceReport r = check_equivariance(build_map("SL2_CG_K", std::nullopt, std::nullopt, k), opt.D);
    add(g, "SL2_CG_K k=" + std::to_string(k), r.pass, r.pass ? "" : r.failure);
    CgTable t = solve_cg_coefficients(k, opt.D);
    add(g, "solved coefficients vs closed pattern k=" + std::to_string(k), t.all_match);
  }
  EquivarianceReport neg = check_equivariance(perturbed_sl2_phi_plus(), opt.D);
  add(g, "perturbed map is rejected", !neg.pass);
}

void images(GateResult& g, const SuiteOptions& opt) {
  const int samples = 5;
  for (const auto& id : whittaker_image_ids()) {
    if (id == "SL2_CG_K") {
      for (int k = 1; k <= 3; ++k) {
        ImageCheck c = verify_whittaker_image(whittaker_image(id, false, k), opt.D + k, samples, 100 + k);
        add(g, id + " k=" + std::to_string(k), c.pass && c.samples == samples, c.failure);
      }
      continue;
    }
    ImageCheck c = verify_whittaker_image(whittaker_image(id), opt.D, samples, 7);
    add(g, id, c.pass && c.samples == samples, c.failure);
  }
}

void relations(GateResult& g, const SuiteOptions& opt) {
  for (const char* id : {"RAISE_SL2_UP", "RAISE_SL2_DOWN", "BAXTER_SL2_A", "BAXTER_SL2_B", "BILINEAR_SL2",
                         "NONLINEAR_SL2", "PRODUCT_SL2"})
    add_report(g, run_relation(id, opt, opt.sl2_tol));
  for (const char* id : {"RAISE_SL3", "BILINEAR_SL3"}) add_report(g, run_relation(id, opt, opt.sl3_tol));
  // informational
  for (auto& e : erratum_table(opt.verify))
    g.lines.push_back("erratum " + e.relation + "\t" + e.status + (e.detail.empty() ? "" : "\t" + e.detail));
}

void closure(GateResult& g, const SuiteOptions&) {
  DiffExpOp d = raise_lower_closure_defect();
  add(g, "RAISE_SL2_DOWN o RAISE_SL2_UP vs Toda operator", d.is_zero(), d.is_zero() ? "" : d.str());
}

void search(GateResult& g, const SuiteOptions& opt) {
  PChain c3 = solve_chain(3);
  add(g, "n=3 recurrence certificate", c3.certified, c3.note);
  for (auto& pc : compare_sl3_image(c3)) add(g, "n=3 " + pc.what, pc.pass, pc.pass ? "" : pc.detail);
  PChain c4 = solve_chain(4);
  add(g, "n=4 recurrence certificate", c4.certified, c4.note);
  for (auto& pc : first_polynomials_check(c4)) add(g, "n=4 " + pc.what, pc.pass, pc.pass ? "" : pc.detail);
  ConsistencyReport r = whittaker_image_consistency(c4, opt.D, opt.quick ? 2 : 3, 11);
  add(g, "n=4 full set, Whittaker image consistency D=" + std::to_string(opt.D), r.pass,
      r.pass ? "samples=" + std::to_string(r.samples) + " cut=" + std::to_string(r.cut) : r.failure);
  PChain c5 = solve_chain(5, 2);
  add(g, "n=5 recurrence certificate (P2..P4)", c5.certified);
  for (auto& pc : first_polynomials_check(c5)) add(g, "n=5 " + pc.what, pc.pass, pc.pass ? "" : pc.detail);
}

std::string serialize_subset(const SuiteOptions& opt, int threads) {
  int saved = num_threads();
  set_num_threads(threads);
  SuiteOptions o = opt;
  o.quick = true;
  o.verify.threads = threads;
  std::ostringstream os;
  write_residual_header(os);
  try {
    for (const char* id : {"TODA_SL2", "BAXTER_SL2_A", "PRODUCT_SL2_SERIES"}) {
      auto r = run_relation(id, o, opt.sl2_tol);
      write_residual_records(os, r);
      write_residual_summary(os, r);
    }
    auto r = run_relation("RAISE_SL3", o, opt.sl3_tol);
    write_residual_records(os, r);
    write_residual_summary(os, r);
  } catch (...) {
    set_num_threads(saved);
    throw;
  }
  set_num_threads(saved);
  return os.str();
}

void determinism(GateResult& g, const SuiteOptions& opt) {
  std::string a = serialize_subset(opt, 1);
  std::string b = serialize_subset(opt, 1);
  std::string c = serialize_subset(opt, 3);
  add(g, "repeated run, 1 thread", a == b);
  add(g, "1 thread vs 3 threads", a == c);
}

const char* kNames[kCriteria] = {"Macdonald consistency",    "Toda eigen-equations",  "Casimir scalars",
                                 "Intertwiner equivariance", "Whittaker images",      "Relation suite",
                                 "Symbolic closure",         "sl(n) search",          "Determinism"};

}  // namespace

GateResult run_criterion(int number, const SuiteOptions& opt_in) {
  SuiteOptions opt = opt_in;
  if (opt.quick && opt.D > 6) opt.D = 6;
  if (opt.verify.threads > 0) set_num_threads(opt.verify.threads);
  GateResult g;
  g.number = number;
  if (number < 1 || number > kCriteria) throw std::invalid_argument("no criterion " + std::to_string(number));
  g.name = kNames[number - 1];
  g.pass = true;
  auto t0 = std::chrono::steady_clock::now();
  try {
    switch (number) {
      case 1: macdonald(g, opt); break;
      case 2: toda_equations(g, opt); break;
      case 3: casimir_scalars(g, opt); break;
      case 4: equivariance(g, opt); break;
      case 5: images(g, opt); break;
      case 6: relations(g, opt); break;
      case 7: closure(g, opt); break;
      case 8: search(g, opt); break;
      case 9: determinism(g, opt); break;
    }
  } catch (const std::exception& e) {
    add(g, "exception", false, e.what());
  }
  g.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return g;
}

std::vector<GateResult> run_suite(const SuiteOptions& opt) {
  std::vector<GateResult> out;
  for (int k = 1; k <= kCriteria; ++k) {
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), k) == opt.only.end()) continue;
    out.push_back(run_criterion(k, opt));
  }
  return out;
}

void write_suite_report(std::ostream& os, const std::vector<GateResult>& gates) {
  os << "# " << kReportFormat << " suite\n";
  os << "criterion\tname\tstatus\n";
  for (auto& g : gates)
    os << "AC" << g.number << '\t' << g.name << '\t' << (g.pass ? "pass" : "fail") << (g.converged ? "" : "\tnot-converged")
       << '\n';
  os << "# checks\n";
  for (auto& g : gates)
    for (auto& l : g.lines) os << "AC" << g.number << '\t' << l << '\n';
  os << "# residuals\n";
  write_residual_header(os);
  for (auto& g : gates)
    for (auto& r : g.reports) {
      write_residual_records(os, r);
      write_residual_summary(os, r);
    }
}

}  // namespace toda
