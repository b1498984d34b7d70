// Command line front end: eval, verify, suite, search-p, dump, erratum.
// Exit codes: 0 pass, 1 relation failure, 2 usage error, 3 numerical non-convergence.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "toda/evaluator.hpp"
#include "toda/images.hpp"
#include "toda/intertwiners.hpp"
#include "toda/quadrature.hpp"
#include "toda/relations.hpp"
#include "toda/report.hpp"
#include "toda/sln_search.hpp"
#include "toda/suite.hpp"

using namespace toda;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kNoConv = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("not a number: '" + item + "'");
    }
  }
  return out;
}

// l1=0.3,mR1=1,n1=0.45
ParamMap parse_params(const std::string& s, ParamMap base) {
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("expected name=value in --params, got '" + item + "'");
    std::string name = item.substr(0, eq);
    size_t p = 0;
    while (p < name.size() && !std::isdigit(static_cast<unsigned char>(name[p]))) ++p;
    std::string kind = name.substr(0, p);
    int idx = p < name.size() ? std::atoi(name.c_str() + p) : 0;
    if (idx < 1 || idx > 9) throw UsageError("bad parameter name '" + name + "'");
    Var v;
    if (kind == "l") v = lam(idx);
    else if (kind == "n") v = nu(idx);
    else if (kind == "mL") v = muL(idx);
    else if (kind == "mR") v = muR(idx);
    else throw UsageError("unknown parameter '" + name + "' (use l, n, mL, mR with an index)");
    base[v] = parse_list(item.substr(eq + 1)).at(0);
  }
  return base;
}

// start:stop:count
std::vector<double> parse_range(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw UsageError("grid must be start:stop:count");
  double a = parse_list(parts[0]).at(0), b = parse_list(parts[1]).at(0);
  int n = static_cast<int>(parse_list(parts[2]).at(0));
  if (n < 1) throw UsageError("grid count must be positive");
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
  return out;
}

std::ostream& open_out(const std::string& path, std::ofstream& f) {
  if (path.empty()) return std::cout;
  f.open(path);
  if (!f) throw UsageError("cannot write " + path);
  return f;
}

// eval ----------------------------------------------------------------------

struct EvalArgs {
  std::string target, method = "integral", lambda, mu_left = "1", mu_right = "1", phi = "0", grid, out;
};

int cmd_eval(const EvalArgs& a, const VerifyOptions& vopt) {
  const int n = a.target == "sl2" ? 2 : 3;
  NumericSpec s{n, parse_list(a.lambda), parse_list(a.mu_left), parse_list(a.mu_right)};
  if (n == 3 && a.mu_left == "1") s.mu_left = {1, 1};
  if (n == 3 && a.mu_right == "1") s.mu_right = {1, 1};
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::vector<double> phi0 = parse_list(a.phi);
  if (static_cast<int>(phi0.size()) != n - 1) throw UsageError("--phi needs " + std::to_string(n - 1) + " entries");
  std::vector<std::vector<double>> points;
  if (a.grid.empty()) {
    points.push_back(phi0);
  } else {
    for (double x : parse_range(a.grid)) {
      auto p = phi0;
      p[0] = x;
      points.push_back(p);
    }
  }
  if (n == 3 && a.method != "integral") throw UsageError("sl3 supports --method integral only");
  std::ofstream f;
  std::ostream& os = open_out(a.out, f);
  write_eval_header(os);
  std::string inputs = "lambda=" + format_vector(s.lambda) + ";mu_left=" + format_vector(s.mu_left) +
                       ";mu_right=" + format_vector(s.mu_right);
  bool conv = true;
  for (auto& p : points) {
    EvalResult r;
    try {
      if (n == 3) {
        r = eval_integral_sl3(s, p[0], p[1], vopt.sl3_quadrature);
      } else if (a.method == "series") {
        r = eval_series_sl2(s.lambda[0], -s.mu_left[0] * s.mu_right[0], p[0]);
      } else if (a.method == "integral") {
        r = eval_integral_sl2(s, p[0], vopt.sl2_quadrature);
      } else if (a.method == "macdonald") {
        double l = s.lambda[0], am = s.mu_left[0] * s.mu_right[0];
        if (!(am > 0)) throw UsageError("macdonald form needs mu_left * mu_right > 0");
        EvalResult k = macdonald_K(std::fabs(l + 1), 2 * std::sqrt(am) * std::exp(-p[0]), vopt.sl2_quadrature);
        double c = 2 * std::pow(am, (l + 1) / 2) * std::exp(-p[0]) / std::tgamma(l + 1);
        r = k;
        r.value = c * k.value;
        r.est_error = std::fabs(c) * k.est_error;
        r.method = "macdonald";
        r.phi = p;
      } else {
        throw UsageError("unknown method " + a.method);
      }
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    write_eval_record(os, a.target, inputs, r);
    conv = conv && r.converged;
  }
  return conv ? kPass : kNoConv;
}

// verify --------------------------------------------------------------------

struct VerifyArgs {
  std::string id, params, points, grid, out;
  double tol = -1;
  bool quick = false, printed = false;
  int product_terms = 12;
};

int cmd_verify(const VerifyArgs& a, const VerifyOptions& vopt) {
  auto ids = relation_ids();
  if (std::find(ids.begin(), ids.end(), a.id) == ids.end()) {
    std::string list;
    for (auto& i : ids) list += "  " + i + "\n";
    throw UsageError("unknown relation '" + a.id + "'; registered relations:\n" + list);
  }
  RelationSpec r = make_relation(a.id, a.product_terms);
  ParamMap params = parse_params(a.params, default_params(a.id));
  std::vector<std::vector<double>> grid;
  if (!a.points.empty()) {
    std::stringstream ss(a.points);
    std::string pt;
    while (std::getline(ss, pt, ';')) grid.push_back(parse_list(pt));
  } else if (!a.grid.empty()) {
    auto axis = parse_range(a.grid);
    grid = {{}};
    for (int v = 0; v < r.nvars; ++v) {
      std::vector<std::vector<double>> next;
      for (auto& g : grid)
        for (double x : axis) {
          auto p = g;
          p.push_back(x);
          next.push_back(p);
        }
      grid = next;
    }
  } else {
    grid = standard_grid(r, a.quick);
  }
  for (auto& p : grid)
    if (static_cast<int>(p.size()) != r.nvars)
      throw UsageError(a.id + " has " + std::to_string(r.nvars) + " variables");
  double tol = a.tol > 0 ? a.tol : r.tol;
  ResidualReport rep;
  try {
    rep = verify(r, params, grid, tol, vopt);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::ofstream f;
  std::ostream& os = open_out(a.out, f);
  write_residual_header(os);
  write_residual_records(os, rep);
  write_residual_summary(os, rep);
  if (a.printed) {
    os << "# printed form\n";
    try {
      RelationSpec pr = make_relation(a.id + "_PRINTED");
      ResidualReport prep = verify(pr, params, grid, tol, vopt);
      write_residual_records(os, prep);
      write_residual_summary(os, prep);
      os << "# printed vs derived\t" << (prep.pass ? "agrees" : "differs") << '\n';
    } catch (const std::exception& e) {
      os << "# printed vs derived\t" << e.what() << '\n';
    }
  }
  if (!a.out.empty()) write_residual_summary(std::cout, rep);
  if (!rep.converged) return kNoConv;
  return rep.pass ? kPass : kFail;
}

// suite ---------------------------------------------------------------------

int cmd_suite(bool quick, const std::string& only, const std::string& out, const VerifyOptions& vopt) {
  SuiteOptions o;
  o.quick = quick;
  o.verify = vopt;
  if (!only.empty())
    for (double x : parse_list(only)) o.only.push_back(static_cast<int>(x));
  auto gates = run_suite(o);
  std::ofstream f;
  std::ostream& os = open_out(out, f);
  write_suite_report(os, gates);
  bool pass = true, conv = true;
  for (auto& g : gates) {
    if (!out.empty())
      std::cout << "AC" << g.number << '\t' << g.name << '\t' << (g.pass ? "pass" : "fail") << '\n';
    std::cerr << "AC" << g.number << " " << g.seconds << " s\n";
    pass = pass && g.pass;
    conv = conv && g.converged;
  }
  if (!conv) return kNoConv;
  return pass ? kPass : kFail;
}

// search-p ------------------------------------------------------------------

int cmd_search(int n, int j, int max_degree, int consistency_D, const std::string& out) {
  if (n < 2 || n > 6) throw UsageError("--n must be in [2,6]");
  if (j < 0 || j > n - 1) throw UsageError("--j must be in [0,n-1]");
  PChain c = solve_chain(n, j, max_degree);
  std::ofstream f;
  std::ostream& os = open_out(out, f);
  os << "# " << kReportFormat << " search-p\n";
  os << "n=" << n << " j=" << j << '\n';
  bool ok = c.certified;
  for (int k = n - 1; k >= j; --k) {
    const PSolution& p = c.P[k];
    os << p.str() << '\n';
    os << "  ansatz degree " << p.d << (p.nonsimple ? ", with non-simple f" : "") << ", kernel " << p.kernel_dim
       << ", free columns:";
    for (auto& fc : p.free_columns) os << " " << fc;
    os << '\n';
  }
  if (!c.note.empty()) os << "note: " << c.note << '\n';
  auto res = recurrence_residuals(c);
  os << "certificate: " << (res.empty() ? "[e_k, P_j] + delta_kj P_{j+1} = 0 for all k, j" : res.front()) << '\n';
  auto show = [&](const std::vector<PatternCheck>& v) {
    for (auto& pc : v) {
      os << "check " << pc.what << ": " << (pc.pass ? "pass" : "fail") << '\n';
      ok = ok && pc.pass;
    }
  };
  if (n == 2 && j == 0) show(compare_sl2_image(c));
  if (n == 3 && j == 0) show(compare_sl3_image(c));
  if (n >= 3 && j <= n - 3) show(first_polynomials_check(c));
  if (j == 0 && consistency_D > 0) {
    ConsistencyReport r = whittaker_image_consistency(c, consistency_D, 3, 11);
    os << "check Whittaker image consistency D=" << consistency_D << ": " << (r.pass ? "pass" : "fail " + r.failure)
       << '\n';
    ok = ok && r.pass;
  }
  return ok ? kPass : kFail;
}

// dump ----------------------------------------------------------------------

int cmd_dump(const std::string& what, const std::string& id, int n) {
  if (what == "relation") {
    std::cout << relation_str(make_relation(id));
  } else if (what == "image") {
    std::cout << whittaker_image(id).str() << '\n';
  } else if (what == "casimir") {
    std::cout << casimir2(n).str() << '\n';
    std::cout << "scalar: " << casimir_scalar(n, symbolic_weight(n, VarKind::lambda)).str() << '\n';
  } else if (what == "closure") {
    DiffExpOp d = raise_lower_closure_defect();
    std::cout << (d.is_zero() ? "0" : d.str()) << '\n';
  } else {
    throw UsageError("dump: expected relation, image, casimir or closure");
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toda chain Whittaker functions: evaluation and identity checks"};
  app.set_config("--config", "", "plain key=value configuration file");
  app.require_subcommand(1);
  int threads = 1;
  double sl2_eps = 1e-13, sl3_eps = 1e-7;
  app.add_option("--threads", threads, "worker threads for grid points and quadrature")
      ->envname("TODA_THREADS")
      ->check(CLI::Range(1, 256));
  app.add_option("--sl2-quad-tol", sl2_eps, "sl(2) quadrature tolerance")->envname("TODA_SL2_QUAD_TOL");
  app.add_option("--sl3-quad-tol", sl3_eps, "sl(3) quadrature tolerance")->envname("TODA_SL3_QUAD_TOL");

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "evaluate a Whittaker function");
  eval->add_option("target", ea.target, "sl2 or sl3")->required()->check(CLI::IsMember({"sl2", "sl3"}));
  eval->add_option("--lambda", ea.lambda, "weight, comma separated")->required();
  eval->add_option("--mu-left", ea.mu_left, "left eigenvalues");
  eval->add_option("--mu-right", ea.mu_right, "right eigenvalues");
  eval->add_option("--phi", ea.phi, "point, comma separated");
  eval->add_option("--method", ea.method, "series, integral or macdonald")
      ->check(CLI::IsMember({"series", "integral", "macdonald"}));
  eval->add_option("--grid", ea.grid, "start:stop:count along the first coordinate");
  eval->add_option("--out", ea.out, "output file");

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "check a relation on a grid");
  ver->add_option("relation", va.id, "relation id")->required();
  ver->add_option("--params", va.params, "overrides, e.g. l1=0.3,mR1=1");
  ver->add_option("--points", va.points, "explicit points 'a,b;c,d'");
  ver->add_option("--grid", va.grid, "start:stop:count per variable (product grid)");
  ver->add_option("--tol", va.tol, "relative tolerance");
  ver->add_flag("--quick", va.quick, "reduced standard grid");
  ver->add_flag("--printed", va.printed, "also check the printed form and report the difference");
  ver->add_option("--product-terms", va.product_terms, "terms in product sums")->check(CLI::Range(1, 40));
  ver->add_option("--out", va.out, "report file");

  bool quick = false;
  std::string only, suite_out;
  auto* suite = app.add_subcommand("suite", "run all acceptance criteria");
  suite->add_flag("--quick", quick, "reduced grids and truncation degree");
  suite->add_option("--only", only, "criterion numbers, comma separated");
  suite->add_option("--out", suite_out, "report file");

  int sn = 3, sj = 0, sD = 0, max_degree = -1;
  std::string search_out;
  auto* search = app.add_subcommand("search-p", "solve for the P_j of Phi^{-1} in sl(n)");
  search->add_option("--n", sn, "rank + 1")->required();
  search->add_option("--j", sj, "lowest index to solve");
  search->add_option("--max-degree", max_degree, "ansatz degree for P_j (at least n-1-j)");
  search->add_option("--consistency", sD, "also run the truncated image check at this degree (j = 0)");
  search->add_option("--out", search_out, "output file");

  std::string dwhat, did;
  int dn = 2;
  auto* dump = app.add_subcommand("dump", "print symbolic objects");
  dump->add_option("what", dwhat, "relation, image, casimir or closure")->required();
  dump->add_option("id", did, "relation or image id");
  dump->add_option("--n", dn, "rank + 1 for casimir");

  std::string err_out;
  auto* err = app.add_subcommand("erratum", "printed versus derived forms");
  err->add_option("--out", err_out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  set_num_threads(threads);
  VerifyOptions vopt;
  vopt.threads = threads;
  vopt.sl2_quadrature.rel_tol = sl2_eps;
  vopt.sl3_quadrature.rel_tol = sl3_eps;
  try {
    if (*eval) return cmd_eval(ea, vopt);
    if (*ver) return cmd_verify(va, vopt);
    if (*suite) return cmd_suite(quick, only, suite_out, vopt);
    if (*search) {
      if (max_degree >= 0 && max_degree < sn - 1 - sj) throw UsageError("--max-degree must be at least n-1-j");
      return cmd_search(sn, sj, max_degree, sD, search_out);
    }
    if (*dump) return cmd_dump(dwhat, did, dn);
    if (*err) {
      std::ofstream f;
      write_erratum_table(open_out(err_out, f), erratum_table(vopt));
      return kPass;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}
