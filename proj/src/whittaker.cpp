#include "toda/whittaker.hpp"

#include <cmath>
#include <stdexcept>

#include "toda/linsolve.hpp"

namespace toda {

WhittakerSpec WhittakerSpec::symbolic(int n, VarKind weight) {
  WhittakerSpec s;
  s.n = n;
  s.lambda = symbolic_weight(n, weight);
  for (int i = 1; i < n; ++i) {
    s.mu_left.push_back(Poly::var(muL(i)));
    s.mu_right.push_back(Poly::var(muR(i)));
  }
  return s;
}

void NumericSpec::validate() const {
  if (n < 2 || n > 9) throw std::invalid_argument("n must be in [2,9]");
  size_t r = static_cast<size_t>(n - 1);
  if (lambda.size() != r || mu_left.size() != r || mu_right.size() != r)
    throw std::invalid_argument("parameter vectors must have n-1 entries");
  for (auto* v : {&lambda, &mu_left, &mu_right})
    for (double d : *v)
      if (!std::isfinite(d)) throw std::invalid_argument("non-finite parameter");
}

TruncatedVector whittaker_vector(const WhittakerSpec& spec, int D) {
  Poly lin;
  for (int i = 1; i < spec.n; ++i) lin += spec.mu_right[i - 1] * Poly::var(cellx(i, i + 1));
  TruncatedVector v;
  v.weight = spec.lambda;
  v.D = D;
  Poly term(1);
  v.poly = term;
  for (int k = 1; k <= D; ++k) {
    term = (term * lin) * Rational(1, k);
    v.poly += term;
  }
  return v;
}

ExpVector whittaker_exp_vector(const WhittakerSpec& spec) { return ExpVector{Poly(1), spec.mu_right}; }

PbwWhittaker whittaker_pbw_sl2(const Poly& lambda, const Poly& mu, int D) {
  PbwWhittaker out{UEAElement(2), Poly(1)};
  Rational Dfact = 1;
  for (int k = 2; k <= D; ++k) Dfact *= k;
  out.den = falling(lambda, D) * Dfact;
  Rational kfact = 1;
  for (int k = 0; k <= D; ++k) {
    if (k > 0) kfact *= k;
    Poly c = mu.pow(k) * falling(lambda - Poly(k), D - k) * Rational(Dfact / kfact);
    Mono m(3, 0);
    m[0] = static_cast<std::uint8_t>(k);
    out.f_series.add_term(m, c);
  }
  return out;
}

EigenReport check_eigenproperty(const TruncatedVector& v, const WhittakerSpec& spec) {
  EigenReport rep;
  const int n = spec.n;
  const auto& L = SlAlgebra::get(n);
  auto fields = derive_generator_fields(n, v.weight, v.cells);
  for (int i = 0; i < n - 1; ++i) {
    Poly lhs = apply_field(fields[L.e(i)], v.poly).truncate(v.cells, v.D - 1);
    Poly rhs = (spec.mu_right[i] * v.poly).truncate(v.cells, v.D - 1);
    if (lhs != rhs) {
      rep.pass = false;
      rep.first_failure = "e" + std::to_string(i + 1) + ": residual " + (lhs - rhs).str();
      return rep;
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 2; j < n; ++j) {
      Poly r = apply_field(fields[L.e(i, j)], v.poly).truncate(v.cells, v.D - 1);
      if (!r.is_zero()) {
        rep.pass = false;
        rep.first_failure = L.gens[L.e(i, j)].name + " does not annihilate";
        return rep;
      }
    }
  return rep;
}

std::vector<Monomial> cell_monomials(int n, VarKind k, int d) {
  return monomials_upto(cell_vars(n, k), d);
}

namespace {

// x_ij counts j-i; every e_k lowers this grading by exactly one
int height_degree(const Monomial& m) {
  int h = 0;
  for (auto& [v, e] : m.f) h += e * (var_index(v) % 16 - var_index(v) / 16);
  return h;
}

}  // namespace

int whittaker_solution_dimension(const WhittakerSpec& spec, int d) {
  const int n = spec.n;
  const auto& L = SlAlgebra::get(n);
  auto fields = derive_generator_fields(n, spec.lambda);
  std::vector<Monomial> monos;
  for (auto& m : cell_monomials(n, VarKind::x, d))
    if (height_degree(m) <= d) monos.push_back(m);
  std::map<Monomial, int> col;
  for (size_t k = 0; k < monos.size(); ++k) col[monos[k]] = static_cast<int>(k);
  // equation key: (simple root, output monomial)
  std::map<std::pair<int, Monomial>, std::map<int, Rational>> eqs;
  for (size_t k = 0; k < monos.size(); ++k) {
    Poly p;
    p.add_term(monos[k], 1);
    for (int i = 0; i < n - 1; ++i) {
      Poly r = apply_field(fields[L.e(i)], p) - spec.mu_right[i] * p;
      for (auto& [m, c] : r.terms()) {
        if (height_degree(m) > d - 1) continue;
        if (!m.f.empty() && var_kind(m.f.back().first) != VarKind::x) throw std::invalid_argument("spec must be numeric");
        eqs[{i, m}][static_cast<int>(k)] += c;
      }
    }
  }
  SparseSystem sys;
  sys.ncols = static_cast<int>(monos.size());
  for (auto& [key, row] : eqs) sys.add_row(row, 0);
  auto sol = solve_sparse(sys);
  return static_cast<int>(sol.kernel.size());
}

namespace {

using PMat = std::vector<std::vector<Poly>>;

Poly det(PMat a) {
  // Laplace expansion along the first row; blocks are at most 8x8 and sparse
  size_t n = a.size();
  if (n == 1) return a[0][0];
  Poly s;
  for (size_t c = 0; c < n; ++c) {
    if (a[0][c].is_zero()) continue;
    PMat m;
    for (size_t r = 1; r < n; ++r) {
      std::vector<Poly> row;
      for (size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      m.push_back(row);
    }
    Poly t = a[0][c] * det(m);
    if (c % 2) s -= t;
    else s += t;
  }
  return s;
}

RatFunc ratfunc_derivative(const RatFunc& f, Var v) {
  Poly n = f.num().derivative(v) * f.den() - f.num() * f.den().derivative(v);
  return RatFunc(n, f.den() * f.den());
}

}  // namespace

DualKernel dual_whittaker_kernel(int n) {
  if (n < 2 || n > 9) throw std::invalid_argument("n must be in [2,9]");
  // xS with S the antidiagonal permutation; leading minors and their column-shifted companions
  PMat xs(n, std::vector<Poly>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int j = n - 1 - b;
      if (j == a) xs[a][b] = Poly(1);
      else if (j > a) xs[a][b] = Poly::var(cellx(a + 1, j + 1));
    }
  DualKernel k;
  k.n = n;
  RatFunc arg;
  for (int i = 1; i < n; ++i) {
    PMat blk(i, std::vector<Poly>(i)), shifted(i, std::vector<Poly>(i));
    for (int a = 0; a < i; ++a)
      for (int b = 0; b < i; ++b) {
        blk[a][b] = xs[a][b];
        shifted[a][b] = (b == i - 1) ? xs[a][i] : xs[a][b];
      }
    Poly B = det(blk), N = det(shifted);
    k.factors.push_back({B, -(Poly::var(lam(i)) + Poly(2))});
    arg -= RatFunc(Poly::var(muL(n - i)) * N, B);
  }
  k.exponent_arg = arg;
  return k;
}

std::string DualKernel::str() const {
  std::string s;
  for (auto& f : factors) s += "|" + f.base.str() + "|^(" + f.exponent.str() + ") ";
  return s + "exp(" + exponent_arg.str() + ")";
}

double DualKernel::eval(const std::map<Var, double>& point) const {
  double v = std::exp(exponent_arg.evaluate_double(point));
  for (auto& f : factors) v *= std::pow(std::fabs(f.base.evaluate_double(point)), f.exponent.evaluate_double(point));
  return v;
}

std::vector<RatFunc> dual_kernel_residuals(const DualKernel& k) {
  const int n = k.n;
  const auto& L = SlAlgebra::get(n);
  auto fields = derive_generator_fields(n, symbolic_weight(n, VarKind::lambda));
  std::vector<RatFunc> out;
  for (int i = 0; i < n - 1; ++i) {
    const auto& g = fields[L.f(i)];
    RatFunc r(g.mult);
    for (auto& [v, q] : g.field) {
      r -= RatFunc(q.derivative(v));
      RatFunc dlog = ratfunc_derivative(k.exponent_arg, v);
      for (auto& f : k.factors) {
        Poly db = f.base.derivative(v);
        if (!db.is_zero()) dlog += RatFunc(f.exponent * db, f.base);
      }
      r -= RatFunc(q) * dlog;
    }
    r -= RatFunc(Poly::var(muL(i + 1)));
    out.push_back(r);
  }
  return out;
}

UEAElement whittaker_reduce(const UEAElement& X, const std::vector<Poly>& mu) {
  const auto& L = SlAlgebra::get(X.n());
  UEAElement out(X.n());
  for (auto& [m, c] : X.terms()) {
    Poly coeff = c;
    Mono r = m;
    bool zero = false;
    for (int g = L.first_e(); g < L.dim && !zero; ++g) {
      if (!m[g]) continue;
      if (!L.is_simple_e(g)) zero = true;
      else coeff *= mu[L.simple_index(g)].pow(m[g]);
      r[g] = 0;
    }
    if (!zero) out.add_term(r, coeff);
  }
  return out;
}

UEAElement dual_whittaker_reduce(const UEAElement& X, const std::vector<Poly>& mvals) {
  const auto& L = SlAlgebra::get(X.n());
  UEAElement out(X.n());
  for (auto& [m, c] : X.terms()) {
    Poly coeff = c;
    Mono r = m;
    bool zero = false;
    for (int g = 0; g < L.first_h() && !zero; ++g) {
      if (!m[g]) continue;
      if (!L.is_simple_f(g)) zero = true;
      else coeff *= mvals[L.simple_index(g)].pow(m[g]);
      r[g] = 0;
    }
    if (!zero) out.add_term(r, coeff);
  }
  return out;
}

namespace {

UEAElement vacuum_reduce(const UEAElement& X, const Weight& lambda, int kill_from, int kill_to) {
  const auto& L = SlAlgebra::get(X.n());
  UEAElement out(X.n());
  for (auto& [m, c] : X.terms()) {
    bool zero = false;
    for (int g = kill_from; g < kill_to; ++g)
      if (m[g]) zero = true;
    if (zero) continue;
    Poly coeff = c;
    Mono r = m;
    for (int k = 0; k < L.rank; ++k) {
      int g = L.h(k);
      if (m[g]) coeff *= lambda[k].pow(m[g]);
      r[g] = 0;
    }
    out.add_term(r, coeff);
  }
  return out;
}

}  // namespace

UEAElement verma_reduce(const UEAElement& X, const Weight& lambda) {
  const auto& L = SlAlgebra::get(X.n());
  return vacuum_reduce(X, lambda, L.first_e(), L.dim);
}

UEAElement dual_verma_reduce(const UEAElement& X, const Weight& lambda) {
  const auto& L = SlAlgebra::get(X.n());
  return vacuum_reduce(X, lambda, 0, L.first_h());
}

}  // namespace toda
