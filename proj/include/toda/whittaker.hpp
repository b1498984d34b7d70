#pragma once

#include <functional>
#include <string>
#include <vector>

#include "toda/borel_weil.hpp"
#include "toda/poly.hpp"
#include "toda/uea.hpp"

namespace toda {

struct WhittakerSpec {
  int n = 2;
  Weight lambda;
  std::vector<Poly> mu_left;
  std::vector<Poly> mu_right;

  static WhittakerSpec symbolic(int n, VarKind weight = VarKind::lambda);
};

// Numeric version used by the evaluator.
struct NumericSpec {
  int n = 2;
  std::vector<double> lambda;
  std::vector<double> mu_left;
  std::vector<double> mu_right;

  void validate() const;  // throws std::invalid_argument
};

// Taylor truncation of exp(sum_i mu_i x_{i,i+1}) at cell degree D.
TruncatedVector whittaker_vector(const WhittakerSpec& spec, int D);
ExpVector whittaker_exp_vector(const WhittakerSpec& spec);

// sl(2) PBW form sum mu^k f^k/(k! (lambda,k)) |vac>, truncated at f-degree D.
// Coefficients are returned with the common denominator prod_{k<=D}(lambda,k) stripped; see den.
struct PbwWhittaker {
  UEAElement f_series;  // numerators
  Poly den;             // common denominator
};
PbwWhittaker whittaker_pbw_sl2(const Poly& lambda, const Poly& mu, int D);

struct EigenReport {
  bool pass = true;
  std::string first_failure;
};

// e_i v = mu_i v on cell degrees <= D-1; also [e_i,e_j] v = 0 for non-simple root vectors.
EigenReport check_eigenproperty(const TruncatedVector& v, const WhittakerSpec& spec);

std::vector<Monomial> cell_monomials(int n, VarKind k, int d);  // all cell monomials of degree <= d

// Dimension of the solution space of e_i v = mu_i v, graded by root height (x_ij counts j-i), up to height d.
// The spec must be numeric.
int whittaker_solution_dimension(const WhittakerSpec& spec, int d);

// Closed-form dual Whittaker kernel u(x) = prod |B_k|^{a_k} exp(-sum_k c_k N_k/B_k).
struct DualKernel {
  int n = 2;
  struct Factor {
    Poly base;
    Poly exponent;  // in the lambda symbols
  };
  std::vector<Factor> factors;
  RatFunc exponent_arg;  // u contains exp(exponent_arg)
  std::string str() const;
  // numeric value at a cell point; params bind lambda and muL symbols
  double eval(const std::map<Var, double>& point) const;
};

DualKernel dual_whittaker_kernel(int n);

// Symbolic check that f_i^T u = muL_i u for the adjoint w.r.t. the flat measure.
// Returns the list of residual ratios (f_i^T u / u - muL_i), all zero on success.
std::vector<RatFunc> dual_kernel_residuals(const DualKernel& k);

// Reduction of U(sl n) modulo the left ideal annihilating a Whittaker vector: e_i -> mu_i, non-simple e -> 0.
UEAElement whittaker_reduce(const UEAElement& X, const std::vector<Poly>& mu);
// <w| X with <w| f_i = m_i <w|: f_i -> m_i on the left, non-simple f -> 0.
UEAElement dual_whittaker_reduce(const UEAElement& X, const std::vector<Poly>& m);
// X |vac>: kill e's, h -> lambda.
UEAElement verma_reduce(const UEAElement& X, const Weight& lambda);
// <vac| X: kill f's, h -> lambda.
UEAElement dual_verma_reduce(const UEAElement& X, const Weight& lambda);

}  // namespace toda
