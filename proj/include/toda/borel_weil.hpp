#pragma once

#include <map>
#include <string>
#include <vector>

#include "toda/poly.hpp"
#include "toda/uea.hpp"

namespace toda {

// First-order differential operator sum_v q_v(x) d/dv + p(x).
struct RealizedGenerator {
  std::vector<std::pair<Var, Poly>> field;
  Poly mult;

  std::string str() const;
};

// Cell coordinates x_{ij}, 1 <= i < j <= n, in a fixed order.
std::vector<Var> cell_vars(int n, VarKind k = VarKind::x);

// Realized operators for every basis element of sl(n), indexed like SlAlgebra::gens.
std::vector<RealizedGenerator> derive_generator_fields(int n, const Weight& lambda, VarKind cells = VarKind::x);

Poly apply_field(const RealizedGenerator& g, const Poly& v);

// Degree-truncated module vector; degree counts only cell variables.
struct TruncatedVector {
  Poly poly;
  Weight weight;
  int D = 8;
  bool overflow = false;
  VarKind cells = VarKind::x;
};

TruncatedVector apply_generator(const RealizedGenerator& g, const TruncatedVector& v);

// Realize a UEA element: PBW monomials act right-to-left on v. D < 0 means no truncation.
Poly apply_uea(const std::vector<RealizedGenerator>& fields, const UEAElement& X, const Poly& v, VarKind cells = VarKind::x,
               int D = -1, bool* overflow = nullptr);

// h_k weight of a cell monomial in V_lambda.
Weight monomial_weight(int n, const Weight& lambda, const Monomial& cell_part);

// exp(phi . h) applied to a module vector.
// Formal version: (coefficient, exponent weight) per cell monomial.
struct CartanExpTerm {
  Monomial cell;
  Poly coefficient;
  Weight exponent;
};
std::vector<CartanExpTerm> apply_cartan_exponential_formal(int n, const TruncatedVector& v);
std::map<Monomial, double> apply_cartan_exponential(int n, const std::vector<double>& phi, const TruncatedVector& v,
                                                    const std::map<Var, double>& params = {});
// Numeric input vector version (used for composition checks).
std::map<Monomial, double> apply_cartan_exponential(int n, const std::vector<double>& phi, const std::map<Monomial, double>& v,
                                                    const std::vector<double>& lambda);

// g(x) exp(sum_i m_i x_{i,i+1}): exact representation of Whittaker-type vectors.
struct ExpVector {
  Poly g;
  std::vector<Poly> m;
};

ExpVector apply_field(const RealizedGenerator& gen, const ExpVector& v, int n, VarKind cells = VarKind::x);
ExpVector apply_uea(const std::vector<RealizedGenerator>& fields, const UEAElement& X, const ExpVector& v, int n,
                    VarKind cells = VarKind::x);

}  // namespace toda
