#pragma once

#include <map>
#include <string>
#include <vector>

#include "toda/diffexp.hpp"
#include "toda/evaluator.hpp"
#include "toda/uea.hpp"

namespace toda {

// One Whittaker function W entering a relation. Eigenvalues are algebraic: m = mu_L, r = -mu_R numerically.
struct WFactor {
  int n = 2;
  Weight lambda;
  std::vector<Poly> m, r;
  std::vector<int> vars;  // global phi index of each local variable
  std::string label;
};

// coeff * exp(k.phi) * prod over listed factors of d^alpha W_f
struct RelTerm {
  RatFunc coeff = RatFunc(1);
  std::vector<int> k;
  std::vector<std::pair<int, std::vector<int>>> factors;  // (factor index, local derivative multi-index)
};

using RelSide = std::vector<RelTerm>;

enum class Branch { integral, series };

struct RelationSpec {
  std::string id;
  int nvars = 1;
  std::vector<std::string> var_names;
  std::vector<WFactor> factors;
  RelSide lhs, rhs;
  double tol = 1e-8;
  Branch branch = Branch::integral;
  std::string note;
};

// Numeric parameters: symbol -> value, with mu_R given as the positive numeric value.
using ParamMap = std::map<Var, double>;

struct PointResidual {
  std::vector<double> phi;
  double lhs = 0, rhs = 0, abs_res = 0, rel_res = 0;
  bool converged = true;
  std::string error;
};

struct ResidualReport {
  std::string id;
  ParamMap params;
  double tol = 0;
  std::vector<PointResidual> points;
  double max_rel = 0;
  bool pass = false;
  bool converged = true;
};

double relative_residual(double lhs, double rhs);

// Builders -----------------------------------------------------------------

// Terms of op applied to factor f (op acts on the factor's local variables).
RelSide apply_to_factor(const DiffExpOp& op, int f, const WFactor& factor, int nvars);
RelSide multiply(const RelSide& a, const RelSide& b);
RelSide scale(const RelSide& a, const RatFunc& c, const std::vector<int>& k);
RelSide substitute(const RelSide& a, const std::map<Var, Poly>& values);

WFactor make_factor(int n, const Weight& lambda, const EigenSymbols& s, std::vector<int> vars, std::string label);

// One channel of an intertwiner contracted with <w| (x) <j|:
//   compile_left(Q)[W_src] = exp(wt_j) compile_right(P)[W_tgt]
struct Channel {
  DiffExpOp dual;    // acts on W_src
  DiffExpOp primal;  // acts on W_tgt, includes exp(wt_j)
};

// sl(2): Phi_+ : V_{l+1} -> V_l (x) V_1 (up = true) or Phi_- : V_{l-1} -> V_l (x) V_1, component j.
Channel sl2_channel(bool up, int j, const EigenSymbols& s, const Poly& lambda);
// sl(3): Phi^{-1} : V_{l+(1,0)} -> V_l (x) C^3, component j.
Channel sl3_channel(int j, const EigenSymbols& s, const Weight& lambda);

// Spectrum of the Casimir on a matrix element: compile(casimir2) vs its scalar.
RelationSpec toda_relation(int n);
// Same eigen-equation with the operator assembled from Cartan data.
RelationSpec toda_sln_quadratic(int n);
RelationSpec raise_sl2(bool up);
// (j,k) = (0,0): exp(phi) identity, (1,1): exp(-phi) identity
RelationSpec baxter_sl2(int jk);
RelationSpec auto_derive_bilinear(int n);
RelationSpec taylor_nonlinear(const RelationSpec& bilinear, int k);
// sum_{k<=K} C_k W^{m+m',r+r'}_{l+nu-2k} = W^{m,r}_l W^{m',r'}_nu
RelationSpec product_sl2(int K, Branch branch);
RatFunc product_coefficient(int k);  // C_k in the algebraic symbols
RelationSpec raise_sl3(int channel = 0);

// Printed forms (as they appear, transcribed in algebraic symbols) where well-formed.
RelationSpec printed_baxter_sl2(int jk);
RelationSpec printed_bilinear_sl2();
RelationSpec printed_nonlinear_sl2();
RelationSpec printed_raise_sl3();

std::vector<std::string> relation_ids();
RelationSpec make_relation(const std::string& id, int product_terms = 12);
ParamMap default_params(const std::string& id);
std::vector<std::vector<double>> standard_grid(const RelationSpec& r, bool quick = false);

struct VerifyOptions {
  QuadratureSpec sl2_quadrature{1e-13, 12};
  QuadratureSpec sl3_quadrature = default_sl3_quadrature();
  int threads = 1;
};

ResidualReport verify(const RelationSpec& r, const ParamMap& params, const std::vector<std::vector<double>>& grid,
                      double tol, const VerifyOptions& opt = {});
// Value of one side at one point.
double evaluate_side(const RelationSpec& r, const RelSide& side, const ParamMap& params, const std::vector<double>& phi,
                     const VerifyOptions& opt = {});

std::string relation_str(const RelationSpec& r);

// Exact symbolic identities ------------------------------------------------

// D_{l+1} U_l - 1 = -(exp(2 phi)/(2 m r)) (H - c_l) as operators; returns the difference (zero on success).
DiffExpOp raise_lower_closure_defect();

struct ErratumEntry {
  std::string relation;
  std::string status;  // agrees | differs | not well-formed
  std::string detail;
};
std::vector<ErratumEntry> erratum_table(const VerifyOptions& opt = {});

}  // namespace toda
