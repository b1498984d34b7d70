#include "toda/borel_weil.hpp"

#include <cmath>
#include <stdexcept>

namespace toda {

namespace {

using PMat = std::vector<std::vector<Poly>>;

PMat matmul(const PMat& a, const PMat& b) {
  size_t n = a.size();
  PMat c(n, std::vector<Poly>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (size_t j = 0; j < n; ++j)
        if (!b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

}  // namespace

std::string RealizedGenerator::str() const {
  std::string s;
  for (auto& [v, q] : field) {
    if (!s.empty()) s += " + ";
    s += "(" + q.str() + ")*d" + var_name(v);
  }
  if (!mult.is_zero()) {
    if (!s.empty()) s += " + ";
    s += "(" + mult.str() + ")";
  }
  return s.empty() ? "0" : s;
}

std::vector<Var> cell_vars(int n, VarKind k) {
  std::vector<Var> vs;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) vs.push_back(make_var(k, i * 16 + j));
  return vs;
}

std::vector<RealizedGenerator> derive_generator_fields(int n, const Weight& lambda, VarKind cells) {
  if (static_cast<int>(lambda.size()) != n - 1) throw std::invalid_argument("weight rank mismatch");
  const auto& L = SlAlgebra::get(n);
  PMat x(n, std::vector<Poly>(n)), N(n, std::vector<Poly>(n));
  for (int i = 0; i < n; ++i) {
    x[i][i] = Poly(1);
    for (int j = i + 1; j < n; ++j) {
      N[i][j] = Poly::var(make_var(cells, (i + 1) * 16 + j + 1));
      x[i][j] = N[i][j];
    }
  }
  // x^{-1} = sum_k (-N)^k
  PMat xinv(n, std::vector<Poly>(n)), term(n, std::vector<Poly>(n));
  for (int i = 0; i < n; ++i) xinv[i][i] = term[i][i] = Poly(1);
  PMat negN = N;
  for (auto& r : negN)
    for (auto& p : r) p = -p;
  for (int k = 1; k < n; ++k) {
    term = matmul(term, negN);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) xinv[i][j] += term[i][j];
  }
  // k_i = sum_{j >= i} lambda_j
  std::vector<Poly> kk(n);
  for (int i = n - 2; i >= 0; --i) kk[i] = kk[i + 1] + lambda[i];

  std::vector<RealizedGenerator> out;
  for (int g = 0; g < L.dim; ++g) {
    auto m = L.matrix(g);
    PMat a(n, std::vector<Poly>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a[i][j] = Poly(m[i * n + j]);
    PMat M = matmul(matmul(x, a), xinv);
    PMat U(n, std::vector<Poly>(n));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) U[i][j] = M[i][j];
    PMat dx = matmul(U, x);
    RealizedGenerator rg;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (!dx[i][j].is_zero()) rg.field.push_back({make_var(cells, (i + 1) * 16 + j + 1), dx[i][j]});
    for (int i = 0; i < n; ++i) rg.mult += kk[i] * M[i][i];
    out.push_back(std::move(rg));
  }
  return out;
}

Poly apply_field(const RealizedGenerator& g, const Poly& v) {
  Poly r = g.mult * v;
  for (auto& [var, q] : g.field) {
    Poly d = v.derivative(var);
    if (!d.is_zero()) r += q * d;
  }
  return r;
}

TruncatedVector apply_generator(const RealizedGenerator& g, const TruncatedVector& v) {
  TruncatedVector r = v;
  Poly full = apply_field(g, v.poly);
  r.poly = full.truncate(v.cells, v.D);
  if (r.poly != full) r.overflow = true;
  return r;
}

Poly apply_uea(const std::vector<RealizedGenerator>& fields, const UEAElement& X, const Poly& v, VarKind cells, int D,
               bool* overflow) {
  Poly out;
  for (auto& [m, c] : X.terms()) {
    Poly w = v;
    for (int g = static_cast<int>(m.size()) - 1; g >= 0; --g)
      for (int r = 0; r < m[g]; ++r) {
        w = apply_field(fields[g], w);
        if (D >= 0) {
          Poly t = w.truncate(cells, D);
          if (overflow && t != w) *overflow = true;
          w = std::move(t);
        }
      }
    out += c * w;
  }
  return out;
}

Weight monomial_weight(int n, const Weight& lambda, const Monomial& cell_part) {
  const auto& L = SlAlgebra::get(n);
  Weight w = lambda;
  for (auto& [v, e] : cell_part.f) {
    int idx = var_index(v);
    int i = idx / 16 - 1, j = idx % 16 - 1;
    int g = L.e(i, j);
    for (int k = 0; k < n - 1; ++k) w[k] -= Poly(e * L.h_eigen(k, g));
  }
  return w;
}

std::vector<CartanExpTerm> apply_cartan_exponential_formal(int n, const TruncatedVector& v) {
  std::vector<CartanExpTerm> out;
  for (auto& [cell, coeff] : v.poly.split(v.cells)) out.push_back({cell, coeff, monomial_weight(n, v.weight, cell)});
  return out;
}

std::map<Monomial, double> apply_cartan_exponential(int n, const std::vector<double>& phi, const TruncatedVector& v,
                                                    const std::map<Var, double>& params) {
  std::map<Monomial, double> out;
  for (auto& t : apply_cartan_exponential_formal(n, v)) {
    double s = 0;
    for (int k = 0; k < n - 1; ++k) s += phi[k] * t.exponent[k].evaluate_double(params);
    out[t.cell] = t.coefficient.evaluate_double(params) * std::exp(s);
  }
  return out;
}

std::map<Monomial, double> apply_cartan_exponential(int n, const std::vector<double>& phi, const std::map<Monomial, double>& v,
                                                    const std::vector<double>& lambda) {
  Weight lw;
  for (double l : lambda) lw.push_back(Poly(Rational(l)));
  std::map<Monomial, double> out;
  for (auto& [cell, c] : v) {
    Weight w = monomial_weight(n, lw, cell);
    double s = 0;
    for (int k = 0; k < n - 1; ++k) s += phi[k] * w[k].constant_term().get_d();
    out[cell] = c * std::exp(s);
  }
  return out;
}

ExpVector apply_field(const RealizedGenerator& gen, const ExpVector& v, int n, VarKind cells) {
  ExpVector r;
  r.m = v.m;
  r.g = gen.mult * v.g;
  for (auto& [var, q] : gen.field) {
    Poly d = v.g.derivative(var);
    int idx = var_index(var);
    int i = idx / 16, j = idx % 16;
    if (j == i + 1 && i >= 1 && i <= n - 1) d += v.m[i - 1] * v.g;
    if (!d.is_zero()) r.g += q * d;
  }
  (void)cells;
  return r;
}

ExpVector apply_uea(const std::vector<RealizedGenerator>& fields, const UEAElement& X, const ExpVector& v, int n, VarKind cells) {
  ExpVector out{Poly(), v.m};
  for (auto& [m, c] : X.terms()) {
    ExpVector w = v;
    for (int g = static_cast<int>(m.size()) - 1; g >= 0; --g)
      for (int r = 0; r < m[g]; ++r) w = apply_field(fields[g], w, n, cells);
    out.g += c * w.g;
  }
  return out;
}

}  // namespace toda
