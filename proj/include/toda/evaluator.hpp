#pragma once

#include <array>
#include <string>
#include <vector>

#include "toda/quadrature.hpp"
#include "toda/whittaker.hpp"

namespace toda {

// Truncated Taylor polynomial in two variables, total order <= kMaxOrder.
// c[a][b] is the coefficient of d1^a d2^b.
struct Jet2 {
  static constexpr int kMaxOrder = 4;
  int order = 0;
  std::array<std::array<double, kMaxOrder + 1>, kMaxOrder + 1> c{};

  explicit Jet2(int order = 0, double constant = 0);
  // linear jet x0 + s1 d1 + s2 d2
  static Jet2 linear(int order, double x0, double s1, double s2);

  double derivative(int a, int b) const;  // d^a/dphi1^a d^b/dphi2^b
  Jet2 operator+(const Jet2& o) const;
  Jet2 operator*(const Jet2& o) const;
  Jet2 operator*(double s) const;
};

Jet2 jet_exp(const Jet2& x);

struct EvalResult {
  double value = 0;
  double est_error = 0;  // absolute
  std::string method;
  std::vector<double> phi;
  bool converged = true;
};

// All derivatives of total order <= order at one point.
struct EvalJet {
  Jet2 jet;
  double est_error = 0;  // relative to the largest derivative
  std::string method;
  std::vector<double> phi;
  bool converged = true;
  double d(int a, int b = 0) const { return jet.derivative(a, b); }
};

// e^{lambda phi} sum_i (p e^{-2 phi})^i / (i! (lambda,i)), (lambda,i) = lambda (lambda-1) ... (lambda-i+1).
EvalResult eval_series_sl2(double lambda, double mu_prod, double phi);
EvalJet series_sl2_jet(double lambda, double mu_prod, double phi, int order);

enum class Sl2Convention {
  whittaker,  // a^{l+1}/Gamma(l+1) e^{-(l+2) phi} int x^{-(l+2)} exp(-a e^{-2 phi}/x - x) dx, a = mu_L mu_R
  printed,    // mu_R^{l+1} int x^{-(l+2)} exp(-a e^{-2 phi}/x - x) dx
};

EvalResult eval_integral_sl2(const NumericSpec& spec, double phi, const QuadratureSpec& q = {},
                             Sl2Convention conv = Sl2Convention::whittaker);
EvalJet integral_sl2_jet(const NumericSpec& spec, double phi, int order, const QuadratureSpec& q = {},
                         Sl2Convention conv = Sl2Convention::whittaker);

// K_nu(z) = 1/2 int_0^inf x^{nu-1} exp(-z (x + 1/x)/2) dx
EvalResult macdonald_K(double nu, double z, const QuadratureSpec& q = {});

inline QuadratureSpec default_sl3_quadrature() { return QuadratureSpec{1e-7, 10}; }

// Integral over x1, x2 > 0, 0 < x12 < x1 x2 with x12 = x1 x2 u; x1, x2 integrals are done per u node.
EvalResult eval_integral_sl3(const NumericSpec& spec, double phi1, double phi2,
                             const QuadratureSpec& q = default_sl3_quadrature());
EvalJet integral_sl3_jet(const NumericSpec& spec, double phi1, double phi2, int order,
                         const QuadratureSpec& q = default_sl3_quadrature());
// Same function from the closed-form x1, x2 integrals (std::cyl_bessel_k); used as a check.
double integral_sl3_bessel(const NumericSpec& spec, double phi1, double phi2);
double sl3_normalization(const NumericSpec& spec);

struct EvalTarget {
  enum class Kind { series_sl2, integral_sl2, integral_sl3 } kind = Kind::integral_sl2;
  NumericSpec spec;
  double mu_prod = 0;  // series only
  Sl2Convention conv = Sl2Convention::whittaker;
  QuadratureSpec q;
};

EvalJet eval_jet(const EvalTarget& t, const std::vector<double>& phi, int order);
EvalResult eval_derivative(const EvalTarget& t, const std::vector<double>& phi, const std::vector<int>& alpha);

}  // namespace toda
