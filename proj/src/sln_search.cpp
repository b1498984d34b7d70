#include "toda/sln_search.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "toda/borel_weil.hpp"
#include "toda/images.hpp"
#include "toda/intertwiners.hpp"
#include "toda/whittaker.hpp"

namespace toda {

namespace {

std::vector<Poly> mu_symbols(int n) {
  std::vector<Poly> mu;
  for (int i = 1; i < n; ++i) mu.push_back(Poly::var(muR(i)));
  return mu;
}

Poly mu_product(int n, int upto) {
  Poly p(1);
  for (int i = 1; i <= upto && i < n; ++i) p *= Poly::var(muR(i));
  return p;
}

// multisets of size k from {0..m-1}, non-decreasing
void multisets(int m, int k, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  int start = cur.empty() ? 0 : cur.back();
  for (int i = start; i < m; ++i) {
    cur.push_back(i);
    multisets(m, k, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> multisets(int m, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  multisets(m, k, cur, out);
  return out;
}

// <vac| X |w>: e_i -> mu_i on the right, f's killed on the left, h_k -> l_{k+1}
Poly vacuum_value(const UEAElement& X, const std::vector<Poly>& mu) {
  const auto& L = SlAlgebra::get(X.n());
  UEAElement r = whittaker_reduce(X, mu);
  Poly out;
  for (auto& [m, c] : r.terms()) {
    bool has_f = false;
    for (int g = 0; g < L.first_h(); ++g)
      if (m[g]) has_f = true;
    if (has_f) continue;
    Poly t = c;
    for (int k = 0; k < L.rank; ++k)
      if (m[L.h(k)]) t *= Poly::var(lam(k + 1)).pow(m[L.h(k)]);
    out += t;
  }
  return out;
}

// Delta(g) on (X_i |w>) (x) |i>, X_i in U(sl n)
std::vector<UEAElement> delta_act(int n, int g, const std::vector<UEAElement>& v) {
  const auto& L = SlAlgebra::get(n);
  auto M = L.matrix(g);
  UEAElement G = UEAElement::generator(n, g);
  std::vector<UEAElement> out(n, UEAElement(n));
  for (int i = 0; i < n; ++i) {
    out[i] = G * v[i];
    for (int j = 0; j < n; ++j)
      if (M[i * n + j] != 0) out[i] += v[j] * Poly(M[i * n + j]);
  }
  return out;
}

template <class Act, class Vec>
Vec apply_mono(const Mono& m, const Vec& v, Act act) {
  Vec cur = v;
  for (int g = static_cast<int>(m.size()) - 1; g >= 0; --g)
    for (int e = 0; e < m[g]; ++e) cur = act(g, cur);
  return cur;
}

bool is_affine_in(const Poly& p, const std::vector<Var>& vars) {
  for (Var v : vars)
    if (p.degree_in_var(v) > 1) return false;
  return true;
}

Monomial monomial_gcd(const Monomial& a, const Monomial& b) {
  Monomial g;
  for (auto& [v, e] : a.f) {
    int eb = b.exponent(v);
    if (eb > 0) g.f.push_back({v, static_cast<std::uint16_t>(std::min<int>(e, eb))});
  }
  return g;
}

Poly divide_monomial(const Poly& p, const Monomial& m) {
  Poly q;
  for (auto& [mo, c] : p.terms()) q.add_term(mo.quotient(m), c);
  return q;
}

// Cancel the denominator when it divides every coefficient, else a common monomial factor.
void tidy(UEAElement& num, Poly& den) {
  if (num.is_zero()) {
    den = Poly(1);
    return;
  }
  if (!den.is_constant()) {
    UEAElement q(num.n());
    bool ok = true;
    for (auto& [m, c] : num.terms()) {
      Poly qq;
      if (!divides(den, c, &qq)) {
        ok = false;
        break;
      }
      q.add_term(m, qq);
    }
    if (ok) {
      num = q;
      den = Poly(1);
    }
  }
  if (!den.is_constant()) {
    Monomial g = den.terms().begin()->first;
    for (auto& [mo, c] : den.terms()) g = monomial_gcd(g, mo);
    for (auto& [m, c] : num.terms())
      for (auto& [mo, r] : c.terms()) g = monomial_gcd(g, mo);
    if (!g.f.empty()) {
      UEAElement q(num.n());
      for (auto& [m, c] : num.terms()) q.add_term(m, divide_monomial(c, g));
      num = q;
      den = divide_monomial(den, g);
    }
  }
  if (den.terms().size() == 1) {
    Rational c = den.terms().begin()->second;
    num *= Poly(Rational(1) / c);
    den *= Rational(1) / c;
  }
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-19, 19), den(2, 9);
  while (true) {
    Rational q(num(rng), den(rng));
    q.canonicalize();
    if (q.get_den() != 1 && q != 0) return q;
  }
}

}  // namespace

AnsatzSpace ansatz_space(int n, int j, int d, bool nonsimple) {
  const auto& L = SlAlgebra::get(n);
  AnsatzSpace s;
  s.n = n;
  s.j = j;
  s.d = d;
  s.nonsimple = nonsimple;
  std::vector<int> fgens;
  for (int g = 0; g < L.first_h(); ++g)
    if (nonsimple || L.is_simple_f(g)) fgens.push_back(g);
  const int last_f = L.f(n - 2);

  struct Item {
    int deg;
    bool has_last;
    UEAElement el;
    std::string label;
  };
  std::vector<Item> items;
  for (int a = 0; a <= d; ++a)
    for (auto& fs : multisets(static_cast<int>(fgens.size()), a))
      for (int b = 0; a + b <= d; ++b)
        for (auto& ls : multisets(n - 1, b)) {
          UEAElement el(n, Poly(1));
          std::string label;
          bool has_last = false;
          for (int i : fs) {
            el = el * UEAElement::generator(n, fgens[i]);
            label += (label.empty() ? "" : " ") + L.gens[fgens[i]].name;
            if (fgens[i] == last_f) has_last = true;
          }
          for (int i : ls) {
            el = el * UEAElement::coweight(n, i);
            label += (label.empty() ? "" : " ") + std::string("L") + std::to_string(i + 1);
          }
          items.push_back({a + b, has_last, el, label.empty() ? "1" : label});
        }
  std::stable_sort(items.begin(), items.end(), [](const Item& x, const Item& y) {
    if (x.deg != y.deg) return x.deg > y.deg;
    return !x.has_last && y.has_last;
  });
  for (auto& it : items) {
    s.basis.push_back(it.el);
    s.labels.push_back(it.label);
  }
  return s;
}

RecurrenceSystem setup_recurrence(int n, int j, int d, const UEAElement& next_num, const Poly& next_den,
                                  bool nonsimple) {
  RecurrenceSystem sys;
  sys.space = ansatz_space(n, j, d, nonsimple);
  sys.den = next_den;
  const auto mu = mu_symbols(n);
  const int nc = static_cast<int>(sys.space.basis.size());
  std::map<std::pair<int, Mono>, int> row_of;
  auto row = [&](int k, const Mono& m) {
    auto key = std::make_pair(k, m);
    auto it = row_of.find(key);
    if (it != row_of.end()) return it->second;
    int r = static_cast<int>(sys.rows.size());
    row_of.emplace(key, r);
    sys.rows.push_back(key);
    sys.A.emplace_back(nc);
    sys.b.emplace_back();
    return r;
  };
  for (int k = 0; k < n - 1; ++k) {
    UEAElement ek = UEAElement::e(n, k);
    for (int c = 0; c < nc; ++c) {
      UEAElement X = whittaker_reduce(commutator(ek, sys.space.basis[c]), mu);
      for (auto& [m, coeff] : X.terms()) sys.A[row(k, m)][c] += coeff;
    }
    if (k == j)
      for (auto& [m, coeff] : next_num.terms()) sys.b[row(k, m)] -= coeff;
  }
  return sys;
}

std::string PSolution::str() const {
  std::string s = "P" + std::to_string(j) + " = ";
  if (den == Poly(1)) return s + num.str();
  return s + "(" + num.str() + ") / (" + den.str() + ")";
}

PSolution solve_P(int n, int j, int d, const UEAElement& next_num, const Poly& next_den) {
  PSolution sol;
  sol.n = n;
  sol.j = j;
  sol.d = d;
  for (bool nonsimple : {false, true}) {
    RecurrenceSystem sys = setup_recurrence(n, j, d, next_num, next_den, nonsimple);
    const int nc = static_cast<int>(sys.space.basis.size());
    // rank profile at a fixed generic sample; columns are pivoted left to right
    std::map<Var, Rational> at;
    for (int i = 1; i < n; ++i) {
      at[muR(i)] = Rational(2 * i + 1, 3 * i + 4);
      at[lam(i)] = Rational(5 * i + 2, 7 * i + 3);
      at[aux(i)] = Rational(11 * i + 1, 13 * i + 5);
    }
    SparseSystem num_sys;
    num_sys.ncols = nc;
    for (size_t r = 0; r < sys.rows.size(); ++r) {
      std::map<int, Rational> rowv;
      for (int c = 0; c < nc; ++c)
        if (!sys.A[r][c].is_zero()) {
          Rational v = sys.A[r][c].evaluate(at).constant_term();
          if (v != 0) rowv[c] = v;
        }
      num_sys.add_row(rowv, sys.b[r].evaluate(at).constant_term());
    }
    RationalSolution rs = solve_sparse(num_sys);
    if (rs.status == SolveStatus::inconsistent) continue;

    sol.nonsimple = nonsimple;
    sol.status = rs.status;
    sol.kernel_dim = static_cast<int>(rs.kernel.size());
    std::vector<bool> piv(nc, false);
    for (int c : rs.pivots) piv[c] = true;
    int const_col = -1;
    for (int c = 0; c < nc; ++c) {
      if (sys.space.labels[c] == "1") const_col = c;
      if (!piv[c]) sol.free_columns.push_back(sys.space.labels[c]);
    }

    std::vector<std::vector<Poly>> Ap;
    std::vector<Poly> bp;
    for (size_t r = 0; r < sys.rows.size(); ++r) {
      std::vector<Poly> row;
      bool nz = false;
      for (int c : rs.pivots) {
        row.push_back(sys.A[r][c]);
        if (!sys.A[r][c].is_zero()) nz = true;
      }
      if (!nz) {
        if (!sys.b[r].is_zero()) throw std::logic_error("solve_P: row without pivot columns has nonzero rhs");
        continue;
      }
      Ap.push_back(row);
      bp.push_back(sys.b[r]);
    }
    Poly den_s(1);
    std::vector<Poly> y;
    if (!rs.pivots.empty()) {
      PolySolution ps = bareiss_solve(Ap, bp);
      if (ps.status == SolveStatus::inconsistent) throw std::logic_error("solve_P: symbolic system inconsistent");
      den_s = ps.den;
      y = ps.num;
    }
    Poly den = den_s * next_den;
    UEAElement P(n);
    for (size_t i = 0; i < rs.pivots.size(); ++i) P += sys.space.basis[rs.pivots[i]] * y[i];
    if (const_col < 0 || piv[const_col]) throw std::logic_error("solve_P: constant column is not free");
    Poly c0 = j == n - 1 ? mu_product(n, n - 1) : Poly::var(aux(j + 1));
    P += UEAElement(n, c0 * den);
    sol.num = P;
    sol.den = den;
    tidy(sol.num, sol.den);
    return sol;
  }
  sol.status = SolveStatus::inconsistent;
  return sol;
}

std::vector<std::string> recurrence_residuals(const PChain& c) {
  std::vector<std::string> out;
  const int n = c.n;
  const auto mu = mu_symbols(n);
  for (int j = c.lowest; j < n; ++j)
    for (int k = 0; k < n - 1; ++k) {
      UEAElement r = whittaker_reduce(commutator(UEAElement::e(n, k), c.P[j].num), mu);
      if (k == j) r = r * c.P[j + 1].den + c.P[j + 1].num * c.P[j].den;
      if (!r.is_zero())
        out.push_back("[e" + std::to_string(k + 1) + ", P" + std::to_string(j) + "] residual " + r.str());
    }
  return out;
}

PChain solve_chain(int n, int lowest, int lowest_degree) {
  if (n < 2 || n > 6) throw std::invalid_argument("solve_chain: n must be in [2,6]");
  if (lowest < 0 || lowest > n - 1) throw std::invalid_argument("solve_chain: lowest out of range");
  PChain ch;
  ch.n = n;
  ch.lowest = lowest;
  ch.P.resize(n);
  UEAElement next(n);
  Poly next_den(1);
  for (int j = n - 1; j >= lowest; --j) {
    int d = j == lowest && lowest_degree >= 0 ? lowest_degree : n - 1 - j;
    PSolution s = solve_P(n, j, d, next, next_den);
    if (s.status == SolveStatus::inconsistent) {
      ch.note = "no solution for P" + std::to_string(j) + " within the ansatz";
      ch.P[j] = s;
      return ch;
    }
    ch.P[j] = s;
    next = s.num;
    next_den = s.den;
  }

  if (lowest > 0) {
    auto res = recurrence_residuals(ch);
    ch.certified = res.empty();
    for (int j = lowest; j < n; ++j) ch.P[j].certified = ch.certified;
    ch.note = res.empty() ? "partial chain, constants left as aux symbols" : res.front();
    return ch;
  }

  // Casimir eigenvalue of V_{l+w1} on <vac| (x) <i|, affine in the constants aux(1..n-1)
  const auto mu = mu_symbols(n);
  std::vector<Var> avars;
  for (int i = 1; i < n; ++i) avars.push_back(aux(i));
  Poly D(1);
  for (auto& p : ch.P) D *= p.den;
  std::vector<UEAElement> U(n);
  for (int j = 0; j < n; ++j) {
    Poly other(1);
    for (int k = 0; k < n; ++k)
      if (k != j) other *= ch.P[k].den;
    U[j] = ch.P[j].num * other;
  }
  Weight lambda = symbolic_weight(n, VarKind::lambda);
  std::vector<int> w1(n - 1, 0);
  w1[0] = 1;
  Poly cval = casimir_scalar(n, shift(lambda, w1));
  std::vector<UEAElement> CU(n, UEAElement(n));
  const UEAElement C2 = casimir2(n);
  for (auto& [m, coeff] : C2.terms()) {
    auto t = apply_mono(m, U, [n](int g, const std::vector<UEAElement>& v) { return delta_act(n, g, v); });
    for (int i = 0; i < n; ++i) CU[i] += t[i] * coeff;
  }
  std::vector<std::vector<Poly>> A;
  std::vector<Poly> b;
  for (int i = 0; i < n; ++i) {
    Poly E = vacuum_value(CU[i] - U[i] * cval, mu);
    if (!is_affine_in(E, avars)) throw std::logic_error("solve_chain: constants enter non-linearly");
    std::map<Var, Poly> zero;
    for (Var v : avars) zero[v] = Poly(0);
    Poly E0 = E.substitute(zero);
    std::vector<Poly> row;
    for (Var v : avars) {
      auto one = zero;
      one[v] = Poly(1);
      row.push_back(E.substitute(one) - E0);
    }
    A.push_back(row);
    b.push_back(-E0);
  }
  if (!avars.empty()) {
    PolySolution ps = bareiss_solve(A, b);
    if (ps.status != SolveStatus::unique) {
      ch.note = "constants not determined by the Casimir condition";
      return ch;
    }
    std::map<Var, Poly> zero;
    for (Var v : avars) zero[v] = Poly(0);
    for (auto& p : ch.P) {
      UEAElement N0 = p.num.substitute(zero);
      UEAElement out = N0 * ps.den;
      for (size_t m = 0; m < avars.size(); ++m) {
        auto one = zero;
        one[avars[m]] = Poly(1);
        out += (p.num.substitute(one) - N0) * ps.num[m];
      }
      p.num = out;
      p.den = p.den * ps.den;
      tidy(p.num, p.den);
    }
  }
  auto res = recurrence_residuals(ch);
  ch.certified = res.empty();
  for (auto& p : ch.P) p.certified = ch.certified;
  if (!res.empty()) ch.note = res.front();
  return ch;
}

ConsistencyReport whittaker_image_consistency(const PChain& c, int D, int nsamples, std::uint64_t seed) {
  if (c.lowest != 0 || !c.note.empty()) throw std::invalid_argument("consistency check needs the full chain");
  ConsistencyReport rep;
  const int n = c.n;
  int maxdeg = 0;
  for (auto& p : c.P) maxdeg = std::max(maxdeg, p.num.degree());
  rep.cut = D - 2 - maxdeg;
  if (rep.cut < 0) throw std::invalid_argument("truncation degree too small for the operator degree");
  const auto& L = SlAlgebra::get(n);
  std::mt19937_64 rng(seed);
  for (int s = 0; s < nsamples; ++s) {
    std::map<Var, Rational> at;
    std::map<Var, Poly> atp;
    Weight W;
    WhittakerSpec spec;
    spec.n = n;
    for (int i = 1; i < n; ++i) {
      Rational l = random_rational(rng), m = random_rational(rng);
      if (m < 0) m = -m;
      at[lam(i)] = l;
      at[muR(i)] = m;
      W.push_back(Poly(l));
      spec.mu_right.push_back(Poly(m));
      spec.mu_left.push_back(Poly(m));
    }
    for (auto& [v, q] : at) atp[v] = Poly(q);
    spec.lambda = W;
    auto fields = derive_generator_fields(n, W);
    Poly v = whittaker_vector(spec, D).poly;
    ModVec U(n);
    for (int j = 0; j < n; ++j) {
      Rational dv = c.P[j].den.evaluate(at).constant_term();
      U[j] = apply_uea(fields, c.P[j].num.substitute(atp), v) * (Rational(1) / dv);
    }
    Space sp;
    sp.kind = SpaceKind::bw;
    sp.n = n;
    sp.lambda = W;
    sp.fin = FinFactor::standard;
    auto trunc = [&](const ModVec& x) {
      ModVec t(n);
      for (int i = 0; i < n; ++i) t[i] = x[i].truncate(VarKind::x, rep.cut);
      return t;
    };
    auto fail = [&](const std::string& what, const ModVec& r) {
      rep.pass = false;
      for (int i = 0; i < n; ++i)
        if (!r[i].is_zero()) {
          rep.failure = "sample " + std::to_string(s) + " " + what + " component " + std::to_string(i) +
                        " residual " + r[i].str();
          break;
        }
    };
    bool nonzero = false;
    for (auto& x : trunc(U)) nonzero = nonzero || !x.is_zero();
    if (!nonzero) {
      rep.pass = false;
      rep.failure = "sample " + std::to_string(s) + " image vanishes";
      return rep;
    }
    for (int k = 0; k < n - 1; ++k) {
      ModVec r = act(sp, L.e(k), U);
      for (int i = 0; i < n; ++i) r[i] -= U[i] * at[muR(k + 1)];
      r = trunc(r);
      for (auto& x : r)
        if (!x.is_zero()) {
          fail("e" + std::to_string(k + 1) + " eigen-equation", r);
          return rep;
        }
    }
    Rational cval = casimir_scalar(n, shift(W, [&] {
                                     std::vector<int> w1(n - 1, 0);
                                     w1[0] = 1;
                                     return w1;
                                   }()))
                        .constant_term();
    ModVec CU(n);
    const UEAElement C2 = casimir2(n);
    for (auto& [m, coeff] : C2.terms()) {
      ModVec t = apply_mono(m, U, [&](int g, const ModVec& x) { return act(sp, g, x); });
      Rational cf = coeff.constant_term();
      for (int i = 0; i < n; ++i) CU[i] += t[i] * cf;
    }
    for (int i = 0; i < n; ++i) CU[i] -= U[i] * cval;
    CU = trunc(CU);
    for (auto& x : CU)
      if (!x.is_zero()) {
        fail("Casimir eigen-equation", CU);
        return rep;
      }
    ++rep.samples;
  }
  return rep;
}

std::vector<PatternCheck> first_polynomials_check(const PChain& c) {
  std::vector<PatternCheck> out;
  const int n = c.n;
  const auto& L = SlAlgebra::get(n);
  auto residual = [&](const PSolution& p, const UEAElement& expected) { return p.num - expected * p.den; };
  {
    PatternCheck pc{"P" + std::to_string(n - 1) + " = mu1..mu" + std::to_string(n - 1)};
    UEAElement r = residual(c.P[n - 1], UEAElement(n, mu_product(n, n - 1)));
    pc.pass = r.is_zero();
    pc.detail = pc.pass ? c.P[n - 1].str() : "residual " + r.str();
    out.push_back(pc);
  }
  {
    PatternCheck pc{"P" + std::to_string(n - 2) + " = (L" + std::to_string(n - 1) + " + C)" +
                    (n > 2 ? " mu1..mu" + std::to_string(n - 2) : "")};
    UEAElement r = residual(c.P[n - 2], UEAElement::coweight(n, n - 2) * mu_product(n, n - 2));
    Mono one(L.dim, 0);
    UEAElement rest(n);
    for (auto& [m, q] : r.terms())
      if (m != one) rest.add_term(m, q);
    pc.pass = rest.is_zero();
    pc.detail = pc.pass ? c.P[n - 2].str() : "non-constant residual " + rest.str();
    out.push_back(pc);
  }
  if (n >= 3) {
    PatternCheck pc{"f and quadratic part of P" + std::to_string(n - 3)};
    UEAElement E(n);
    for (int i = 0; i <= n - 3; ++i) {
      E += UEAElement::f(n, i) * Poly::var(muR(i + 1));
      UEAElement Li = UEAElement::coweight(n, i);
      E += Li * Li;
      if (i > 0) E -= Li * UEAElement::coweight(n, i - 1);
    }
    E = E * mu_product(n, n - 3);
    UEAElement r = residual(c.P[n - 3], E);
    UEAElement rest(n);
    for (auto& [m, q] : r.terms()) {
      int fdeg = 0, hdeg = 0;
      for (int g = 0; g < L.first_h(); ++g) fdeg += m[g];
      for (int g = L.first_h(); g < L.first_e(); ++g) hdeg += m[g];
      if (fdeg > 0 || hdeg >= 2) rest.add_term(m, q);
    }
    pc.pass = rest.is_zero();
    pc.detail = pc.pass ? c.P[n - 3].str() : "residual " + rest.str();
    out.push_back(pc);
  }
  return out;
}

namespace {

std::vector<PatternCheck> compare_image(const PChain& c, const std::string& id, const Poly& factor) {
  std::vector<PatternCheck> out;
  WhittakerImage img = whittaker_image(id);
  for (int j = 0; j < c.n; ++j) {
    PatternCheck pc{"P" + std::to_string(j) + " vs " + id};
    // P_j = factor * sum pref * op
    Poly den(1);
    std::vector<const ImageTerm*> ts;
    for (auto& t : img.terms)
      if (t.fin == j) {
        ts.push_back(&t);
        den *= t.pref.den();
      }
    UEAElement rhs(c.n);
    for (auto* t : ts) {
      Poly other(1);
      for (auto* u : ts)
        if (u != t) other *= u->pref.den();
      rhs += t->op * (t->pref.num() * other);
    }
    UEAElement r = c.P[j].num * den - rhs * (factor * c.P[j].den);
    pc.pass = r.is_zero();
    pc.detail = pc.pass ? c.P[j].str() : "residual " + r.str();
    out.push_back(pc);
  }
  return out;
}

}  // namespace

std::vector<PatternCheck> compare_sl3_image(const PChain& c) {
  if (c.n != 3) throw std::invalid_argument("compare_sl3_image: n must be 3");
  Poly l1 = Poly::var(lam(1)), l2 = Poly::var(lam(2));
  return compare_image(c, "SL3_PHI_PLUS_INV", (l1 + Poly(1)) * (l1 + l2 + Poly(2)));
}

std::vector<PatternCheck> compare_sl2_image(const PChain& c) {
  if (c.n != 2) throw std::invalid_argument("compare_sl2_image: n must be 2");
  return compare_image(c, "SL2_PHI_PLUS", Poly::var(lam(1)) + Poly(1));
}

}  // namespace toda
