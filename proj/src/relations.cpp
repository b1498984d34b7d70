#include "toda/relations.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "toda/images.hpp"
#include "toda/intertwiners.hpp"
#include "toda/quadrature.hpp"

namespace toda {

double relative_residual(double lhs, double rhs) {
  double den = std::max({std::fabs(lhs), std::fabs(rhs), 1e-300});
  return std::fabs(lhs - rhs) / den;
}

// ---------------------------------------------------------------------------
// building blocks

WFactor make_factor(int n, const Weight& lambda, const EigenSymbols& s, std::vector<int> vars, std::string label) {
  WFactor f;
  f.n = n;
  f.lambda = lambda;
  f.m = s.m;
  f.r = s.r;
  f.vars = std::move(vars);
  f.label = std::move(label);
  return f;
}

RelSide apply_to_factor(const DiffExpOp& op, int f, const WFactor& factor, int nvars) {
  if (op.nvars() != static_cast<int>(factor.vars.size()))
    throw std::invalid_argument("apply_to_factor: operator and factor variable counts differ");
  RelSide out;
  for (auto& [key, c] : op.terms()) {
    RelTerm t;
    t.coeff = c;
    t.k.assign(nvars, 0);
    for (size_t i = 0; i < factor.vars.size(); ++i) t.k.at(factor.vars[i]) += key.k[i];
    t.factors = {{f, key.a}};
    out.push_back(std::move(t));
  }
  return out;
}

RelSide multiply(const RelSide& a, const RelSide& b) {
  RelSide out;
  for (auto& x : a)
    for (auto& y : b) {
      RelTerm t;
      t.coeff = x.coeff * y.coeff;
      t.k = x.k;
      for (size_t i = 0; i < t.k.size(); ++i) t.k[i] += y.k.at(i);
      t.factors = x.factors;
      t.factors.insert(t.factors.end(), y.factors.begin(), y.factors.end());
      out.push_back(std::move(t));
    }
  return out;
}

RelSide scale(const RelSide& a, const RatFunc& c, const std::vector<int>& k) {
  RelSide out = a;
  for (auto& t : out) {
    t.coeff *= c;
    for (size_t i = 0; i < k.size(); ++i) t.k.at(i) += k[i];
  }
  return out;
}

RelSide substitute(const RelSide& a, const std::map<Var, Poly>& values) {
  RelSide out = a;
  for (auto& t : out) t.coeff = t.coeff.substitute(values);
  return out;
}

namespace {

RelSide concat(RelSide a, const RelSide& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

RelSide plain(int f, const WFactor& factor, int nvars) {
  return apply_to_factor(DiffExpOp::scalar(static_cast<int>(factor.vars.size()), RatFunc(1)), f, factor, nvars);
}

Poly V(Var v) { return Poly::var(v); }

// image symbols -> the given weight and eigenvalue symbols
std::map<Var, Poly> image_map(const Weight& lambda, const std::vector<Poly>& left, const std::vector<Poly>& right) {
  std::map<Var, Poly> mp;
  for (size_t i = 0; i < lambda.size(); ++i) mp[lam(static_cast<int>(i) + 1)] = lambda[i];
  for (size_t i = 0; i < left.size(); ++i) mp[muL(static_cast<int>(i) + 1)] = left[i];
  for (size_t i = 0; i < right.size(); ++i) mp[muR(static_cast<int>(i) + 1)] = right[i];
  return mp;
}

DiffExpOp compile_term(const ImageTerm& t, const std::map<Var, Poly>& mp, Side side, const EigenSymbols& s,
                       bool mirror = false) {
  UEAElement op = t.op.substitute(mp);
  if (mirror) op = chevalley_antiinvolution(op);
  return compile_matrix_element(op, side, s) * t.pref.substitute(mp);
}

std::vector<int> zeros(int n) { return std::vector<int>(n, 0); }

}  // namespace

Channel sl2_channel(bool up, int j, const EigenSymbols& s, const Poly& lambda) {
  auto mp = image_map({lambda}, s.m, s.r);
  WhittakerImage P = whittaker_image(up ? "SL2_PHI_PLUS" : "SL2_PHI_MINUS");
  WhittakerImage D = whittaker_image("SL2_PHI_DUAL");
  Channel c{DiffExpOp(1), DiffExpOp(1)};
  for (auto& t : P.terms)
    if (t.fin == j) c.primal += DiffExpOp::exp(1, fin_weight(2, j)) * compile_term(t, mp, Side::right, s);
  for (auto& t : D.terms)
    if (t.fin == j && t.module == (up ? 0 : 1)) c.dual += compile_term(t, mp, Side::left, s);
  return c;
}

Channel sl3_channel(int j, const EigenSymbols& s, const Weight& lambda) {
  WhittakerImage P = whittaker_image("SL3_PHI_PLUS_INV");
  WhittakerImage Q = whittaker_image("SL3_PHI_PLUS");
  Channel c{DiffExpOp(2), DiffExpOp(2)};
  auto mp = image_map(lambda, s.m, s.r);
  // dual side: transpose of the forward map, right eigenvalues replaced by left ones
  auto mq = image_map(lambda, {}, s.m);
  for (auto& t : P.terms)
    if (t.fin == j) c.primal += DiffExpOp::exp(2, fin_weight(3, j)) * compile_term(t, mp, Side::right, s);
  for (auto& t : Q.terms)
    if (t.fin == j) c.dual += compile_term(t, mq, Side::left, s, true);
  return c;
}

// ---------------------------------------------------------------------------
// registry

namespace {

Weight sym_weight(int n, VarKind k) { return symbolic_weight(n, k); }

std::vector<std::string> sl2_names() { return {"phi"}; }

}  // namespace

RelationSpec toda_relation(int n) {
  RelationSpec r;
  r.id = n == 2 ? "TODA_SL2" : "TODA_SL3";
  r.nvars = n - 1;
  r.var_names = n == 2 ? sl2_names() : std::vector<std::string>{"phi1", "phi2"};
  auto s = EigenSymbols::standard(n);
  Weight l = sym_weight(n, VarKind::lambda);
  std::vector<int> vars;
  for (int i = 0; i < n - 1; ++i) vars.push_back(i);
  r.factors = {make_factor(n, l, s, vars, "W_l")};
  r.lhs = apply_to_factor(compile_matrix_element(casimir2(n), Side::right, s), 0, r.factors[0], r.nvars);
  r.rhs = scale(plain(0, r.factors[0], r.nvars), RatFunc(casimir_scalar(n, l)), zeros(r.nvars));
  r.tol = n == 2 ? 1e-8 : 1e-4;
  r.note = "compiled quadratic Casimir acting on W equals its scalar on V_l";
  return r;
}

RelationSpec toda_sln_quadratic(int n) {
  RelationSpec r = toda_relation(n);
  r.id = "TODA_SLN_QUADRATIC";
  const CartanData& cd = cartan(n);
  const int rk = n - 1;
  DiffExpOp op(rk);
  auto unit = [&](int i) {
    std::vector<int> a(rk, 0);
    a[i] += 1;
    return a;
  };
  for (int i = 0; i < rk; ++i)
    for (int j = 0; j < rk; ++j) {
      std::vector<int> a = unit(i);
      a[j] += 1;
      op.add_term(zeros(rk), a, RatFunc(cd.Ainv[i][j]));
      op.add_term(zeros(rk), unit(j), RatFunc(Rational(2) * cd.Ainv[i][j]));
    }
  for (int i = 0; i < rk; ++i) {
    std::vector<int> k(rk);
    for (int j = 0; j < rk; ++j) k[j] = -cd.A[i][j];
    op.add_term(k, zeros(rk), RatFunc(Poly(2) * r.factors[0].m[i] * r.factors[0].r[i]));
  }
  r.lhs = apply_to_factor(op, 0, r.factors[0], r.nvars);
  r.note = "Cartan-data form sum Ainv_ij d_i d_j + 2 sum Ainv_ij d_j + 2 sum m_i r_i exp(-alpha_i) equals <l+rho,l+rho>-<rho,rho>";
  return r;
}

RelationSpec raise_sl2(bool up) {
  RelationSpec r;
  r.id = up ? "RAISE_SL2_UP" : "RAISE_SL2_DOWN";
  r.nvars = 1;
  r.var_names = sl2_names();
  auto s = EigenSymbols::standard(2);
  Poly l = V(lam(1));
  Poly ls = up ? l + Poly(1) : l - Poly(1);
  r.factors = {make_factor(2, {l}, s, {0}, "W_l"), make_factor(2, {ls}, s, {0}, up ? "W_{l+1}" : "W_{l-1}")};
  Channel c = sl2_channel(up, 0, s, l);
  r.lhs = apply_to_factor(c.dual, 1, r.factors[1], 1);
  r.rhs = apply_to_factor(c.primal, 0, r.factors[0], 1);
  r.note = up ? "W_{l+1} = exp(phi) (d+l+2)/(2(l+1)) W_l" : "m W_{l-1} = exp(phi) l/(2r) (l-d) W_l";
  return r;
}

RelationSpec baxter_sl2(int jk) {
  RelationSpec r;
  r.id = jk == 0 ? "BAXTER_SL2_A" : "BAXTER_SL2_B";
  r.nvars = 1;
  r.var_names = sl2_names();
  auto s = EigenSymbols::standard(2);
  Poly l = V(lam(1));
  r.factors = {make_factor(2, {l}, s, {0}, "W_l"), make_factor(2, {l + Poly(1)}, s, {0}, "W_{l+1}"),
               make_factor(2, {l - Poly(1)}, s, {0}, "W_{l-1}")};
  r.lhs = scale(plain(0, r.factors[0], 1), RatFunc(1), fin_weight(2, jk));
  // V_l (x) V_1 = V_{l+1} + V_{l-1}: <w|(x)<j| and |w>(x)|k> split through both summands
  WhittakerImage inv = whittaker_image("SL2_PHI_INV");
  WhittakerImage dual = whittaker_image("SL2_PHI_DUAL");
  auto mp = image_map({l}, s.m, s.r);
  for (int module = 0; module < 2; ++module) {
    DiffExpOp op(1);
    for (auto& q : dual.terms) {
      if (q.fin != jk || q.module != module) continue;
      for (auto& p : inv.terms) {
        if (p.fin != jk || p.module != module) continue;
        op += compile_pair(q.op.substitute(mp), p.op.substitute(mp), s) *
              (q.pref.substitute(mp) * p.pref.substitute(mp));
      }
    }
    r.rhs = concat(r.rhs, apply_to_factor(op, 1 + module, r.factors[1 + module], 1));
  }
  r.note = jk == 0 ? "exp(phi) W_l = W_{l+1} + m r/(l(l+1)) W_{l-1}"
                   : "exp(-phi) W_l = (l+1-d)^2/(4 m r) W_{l+1} + (d+l+1)^2/(4 l (l+1)) W_{l-1}";
  return r;
}

RelationSpec auto_derive_bilinear(int n) {
  RelationSpec r;
  if (n == 2) {
    r.id = "BILINEAR_SL2";
    r.nvars = 2;
    r.var_names = {"phi1", "phi2"};
    auto s1 = EigenSymbols::standard(2, 0), s2 = EigenSymbols::standard(2, 1);
    Poly l = V(lam(1)), v = V(nu(1));
    r.factors = {make_factor(2, {l}, s1, {0}, "W_l"), make_factor(2, {l + Poly(1)}, s1, {0}, "W_{l+1}"),
                 make_factor(2, {v}, s2, {1}, "W_nu"), make_factor(2, {v + Poly(1)}, s2, {1}, "W_{nu+1}")};
    // invariant pairing on V_1 (x) V_1: S(|0>|1>) = -1, S(|1>|0>) = 1
    const int S[2][2] = {{0, -1}, {1, 0}};
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        if (!S[j][k]) continue;
        Channel a = sl2_channel(true, j, s1, l), b = sl2_channel(true, k, s2, v);
        RatFunc c(S[j][k]);
        r.lhs = concat(r.lhs, scale(multiply(apply_to_factor(a.primal, 0, r.factors[0], 2),
                                             apply_to_factor(b.primal, 2, r.factors[2], 2)),
                                    c, zeros(2)));
        r.rhs = concat(r.rhs, scale(multiply(apply_to_factor(a.dual, 1, r.factors[1], 2),
                                             apply_to_factor(b.dual, 3, r.factors[3], 2)),
                                    c, zeros(2)));
      }
    r.note = "contraction of Phi_+ (x) Phi_+ with the invariant pairing of V_1 (x) V_1";
    return r;
  }
  if (n != 3) throw std::invalid_argument("auto_derive_bilinear: n must be 2 or 3");
  r.id = "BILINEAR_SL3";
  r.nvars = 4;
  r.var_names = {"phi1", "phi2", "phi1'", "phi2'"};
  auto s1 = EigenSymbols::standard(3, 0);
  // second family seen through the diagram automorphism: C^3 becomes its dual
  EigenSymbols s2;
  s2.m = {V(muL(4)), V(muL(3))};
  s2.r = {V(muR(4)), V(muR(3))};
  Weight l = sym_weight(3, VarKind::lambda);
  Weight v = {V(nu(2)), V(nu(1))};
  r.factors = {make_factor(3, l, s1, {0, 1}, "W_l"), make_factor(3, shift(l, {1, 0}), s1, {0, 1}, "W_{l+(1,0)}"),
               make_factor(3, v, s2, {3, 2}, "W_nu"), make_factor(3, shift(v, {1, 0}), s2, {3, 2}, "W_{nu+(0,1)}")};
  // invariant pairing C^3 (x) (C^3)^*: |a> pairs with the image of |2-a> under the diagram automorphism
  const int sign[3] = {1, -1, 1};
  for (int a = 0; a < 3; ++a) {
    Channel x = sl3_channel(a, s1, l), y = sl3_channel(2 - a, s2, v);
    RatFunc c(sign[a]);
    r.lhs = concat(r.lhs, scale(multiply(apply_to_factor(x.primal, 0, r.factors[0], 4),
                                         apply_to_factor(y.primal, 2, r.factors[2], 4)),
                                c, zeros(4)));
    r.rhs = concat(r.rhs, scale(multiply(apply_to_factor(x.dual, 1, r.factors[1], 4),
                                         apply_to_factor(y.dual, 3, r.factors[3], 4)),
                                c, zeros(4)));
  }
  r.tol = 1e-4;
  r.note = "contraction of Phi^{-1} (x) Phi^{-1} with the pairing of C^3 and its dual";
  return r;
}

namespace {

Rational factorial(int k) {
  Rational r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

// coefficient of delta^k after phi_2 -> phi_1 + delta
RelSide taylor_side(const RelSide& side, const std::vector<WFactor>& factors, int k) {
  RelSide out;
  for (auto& t : side) {
    std::vector<size_t> movers;
    for (size_t i = 0; i < t.factors.size(); ++i)
      if (factors[t.factors[i].first].vars[0] == 1) movers.push_back(i);
    std::vector<int> add(movers.size(), 0);
    std::function<void(size_t, int)> rec = [&](size_t idx, int rem) {
      if (idx == movers.size()) {
        RelTerm u;
        Rational c = 1;
        for (int x = 0; x < rem; ++x) c *= t.k[1];
        c /= factorial(rem);
        for (size_t i = 0; i < movers.size(); ++i) c /= factorial(add[i]);
        if (c == 0) return;
        u.coeff = t.coeff * RatFunc(c);
        u.k = {t.k[0] + t.k[1]};
        u.factors = t.factors;
        for (size_t i = 0; i < movers.size(); ++i) u.factors[movers[i]].second[0] += add[i];
        out.push_back(std::move(u));
        return;
      }
      for (int j = 0; j <= rem; ++j) {
        add[idx] = j;
        rec(idx + 1, rem - j);
      }
    };
    rec(0, k);
  }
  return out;
}

}  // namespace

RelationSpec taylor_nonlinear(const RelationSpec& bil, int k) {
  if (bil.nvars != 2) throw std::invalid_argument("taylor_nonlinear: needs a relation in two variables");
  for (auto& f : bil.factors)
    if (f.vars.size() != 1) throw std::invalid_argument("taylor_nonlinear: sl(2) factors only");
  RelationSpec r = bil;
  r.id = k == 1 ? "NONLINEAR_SL2" : "NONLINEAR_SL2_K" + std::to_string(k);
  r.nvars = 1;
  r.var_names = sl2_names();
  r.lhs = taylor_side(bil.lhs, bil.factors, k);
  r.rhs = taylor_side(bil.rhs, bil.factors, k);
  for (auto& f : r.factors) f.vars = {0};
  r.tol = k >= 2 ? 1e-6 : 1e-8;
  r.note = "order " + std::to_string(k) + " Taylor coefficient of " + bil.id + " at phi2 = phi1 + delta";
  return r;
}

RatFunc product_coefficient(int k) {
  Poly l = V(lam(1)), v = V(nu(1));
  auto pattern = [&](const Poly& x, const Poly& y) {
    RatFunc a;
    for (int i = 0; i <= k; ++i) a += cg_pattern_coefficient(l, v, k, i) * RatFunc(x.pow(k - i) * y.pow(i));
    return a;
  };
  RatFunc ar = pattern(V(muR(1)), V(muR(2))), am = pattern(V(muL(1)), V(muL(2)));
  Poly den = falling(l, k) * falling(v, k) * falling(l + v - Poly(k - 1), k);
  return ar * am * RatFunc(Poly(factorial(k)), den);
}

RelationSpec product_sl2(int K, Branch branch) {
  RelationSpec r;
  r.id = branch == Branch::integral ? "PRODUCT_SL2" : "PRODUCT_SL2_SERIES";
  r.nvars = 1;
  r.var_names = sl2_names();
  r.branch = branch;
  auto s1 = EigenSymbols::standard(2, 0), s2 = EigenSymbols::standard(2, 1);
  EigenSymbols ss;
  ss.m = {V(muL(1)) + V(muL(2))};
  ss.r = {V(muR(1)) + V(muR(2))};
  Poly l = V(lam(1)), v = V(nu(1));
  r.factors = {make_factor(2, {l}, s1, {0}, "W_l"), make_factor(2, {v}, s2, {0}, "W'_nu")};
  r.lhs = multiply(plain(0, r.factors[0], 1), plain(1, r.factors[1], 1));
  for (int k = 0; k <= K; ++k) {
    r.factors.push_back(make_factor(2, {l + v - Poly(2 * k)}, ss, {0}, "W''_{l+nu-" + std::to_string(2 * k) + "}"));
    r.rhs = concat(r.rhs, scale(plain(k + 2, r.factors.back(), 1), product_coefficient(k), zeros(1)));
  }
  r.note = "W_l W'_nu = sum_{k<=" + std::to_string(K) +
           "} C_k W''_{l+nu-2k}, C_k = k! a_k(r,r') a_k(m,m') / ((l)_k (nu)_k (l+nu-k+1)_k)";
  return r;
}

RelationSpec raise_sl3(int channel) {
  RelationSpec r;
  r.id = channel == 0 ? "RAISE_SL3" : "RAISE_SL3_C" + std::to_string(channel);
  r.nvars = 2;
  r.var_names = {"phi1", "phi2"};
  auto s = EigenSymbols::standard(3);
  Weight l = sym_weight(3, VarKind::lambda);
  r.factors = {make_factor(3, l, s, {0, 1}, "W_l"), make_factor(3, shift(l, {1, 0}), s, {0, 1}, "W_{l+(1,0)}")};
  Channel c = sl3_channel(channel, s, l);
  r.lhs = apply_to_factor(c.dual, 1, r.factors[1], 2);
  r.rhs = apply_to_factor(c.primal, 0, r.factors[0], 2);
  r.tol = 1e-4;
  r.note = "component " + std::to_string(channel) + " of <w|(x)<j| Phi^{-1} exp(phi.h) |w>_{l+(1,0)}";
  return r;
}

// ---------------------------------------------------------------------------
// printed forms, literal transcription with m = mu_L, r = mu_R symbols

namespace {

DiffExpOp dd1() { return DiffExpOp::d(1, 0); }
DiffExpOp sc1(const RatFunc& c) { return DiffExpOp::scalar(1, c); }

}  // namespace

RelationSpec printed_baxter_sl2(int jk) {
  RelationSpec r = baxter_sl2(jk);
  r.id += "_PRINTED";
  Poly l = V(lam(1)), m = V(muL(1)), mr = V(muR(1));
  r.rhs.clear();
  if (jk == 0) {
    r.rhs = concat(scale(plain(2, r.factors[2], 1), RatFunc(m * mr, l * (l + Poly(1))), zeros(1)),
                   plain(1, r.factors[1], 1));
  } else {
    DiffExpOp a = (dd1() + sc1(RatFunc(l + Poly(1)))) * sc1(RatFunc(Rational(1, 2)));
    DiffExpOp b = (sc1(RatFunc(l + Poly(1))) - dd1()) * sc1(RatFunc(Rational(1, 2)));
    r.rhs = concat(apply_to_factor(a * a, 2, r.factors[2], 1),
                   apply_to_factor((b * b) * RatFunc(Poly(1), m * mr), 1, r.factors[1], 1));
  }
  r.note = "printed form";
  return r;
}

RelationSpec printed_bilinear_sl2() {
  RelationSpec r = auto_derive_bilinear(2);
  r.id += "_PRINTED";
  Poly l = V(lam(1)), v = V(nu(1)), m1 = V(muL(1)), m2 = V(muL(2)), r1 = V(muR(1)), r2 = V(muR(2)), one(1);
  Poly den = Poly(2) * (l + one) * (v + one);
  RelSide a = scale(multiply(apply_to_factor(dd1() + sc1(RatFunc(l + Poly(2))), 0, r.factors[0], 2),
                             plain(2, r.factors[2], 2)),
                    RatFunc(-r2, den), {1, -1});
  RelSide b = scale(multiply(plain(0, r.factors[0], 2),
                             apply_to_factor(dd1() + sc1(RatFunc(v + Poly(2))), 2, r.factors[2], 2)),
                    RatFunc(r1, den), {-1, 1});
  r.lhs = concat(a, b);
  RelSide c = multiply(plain(1, r.factors[1], 2),
                       apply_to_factor((sc1(RatFunc(v + one)) - dd1()) * RatFunc(Poly(-1), Poly(2) * m2), 3,
                                       r.factors[3], 2));
  RelSide e = multiply(apply_to_factor((sc1(RatFunc(l + one)) - dd1()) * RatFunc(one, Poly(2) * m1), 1,
                                       r.factors[1], 2),
                       plain(3, r.factors[3], 2));
  r.rhs = concat(c, e);
  r.note = "printed form";
  return r;
}

RelationSpec printed_nonlinear_sl2() {
  RelationSpec r = taylor_nonlinear(auto_derive_bilinear(2), 1);
  r.id += "_PRINTED";
  Poly l = V(lam(1)), v = V(nu(1)), m1 = V(muL(1)), r1 = V(muR(1)), r2 = V(muR(2)), one(1);
  DiffExpOp D = dd1();
  auto on = [&](const DiffExpOp& op, int f) { return apply_to_factor(op, f, r.factors[f], 1); };
  DiffExpOp up = (D + sc1(RatFunc(l + Poly(2)))) * RatFunc(one, Poly(2) * (l + one));
  DiffExpOp a2 = (sc1(RatFunc(1)) - D) * RatFunc(r2, v + one);
  DiffExpOp b2 = (D + sc1(RatFunc(l + Poly(2)))) * (sc1(RatFunc(1)) + D) * RatFunc(one, v + one);
  r.lhs = concat(multiply(on(up, 0), on(a2, 2)),
                 multiply(on(sc1(RatFunc(r1, l + one)), 0), on(b2, 2)));
  DiffExpOp c2 = (sc1(RatFunc(v + one)) - D) * RatFunc(one, Poly(2) * m1) * D;
  DiffExpOp c1 = (sc1(RatFunc(l + one)) - D) * RatFunc(one, Poly(2) * m1);
  r.rhs = concat(scale(multiply(on(sc1(RatFunc(1)), 1), on(c2, 3)), RatFunc(-1), zeros(1)),
                 multiply(on(c1, 1), on(D, 3)));
  r.note = "printed form";
  return r;
}

RelationSpec printed_raise_sl3() {
  RelationSpec r = raise_sl3(0);
  r.id += "_PRINTED";
  Poly l1 = V(lam(1)), l2 = V(lam(2)), r1 = V(muR(1)), r2 = V(muR(2)), one(1);
  Poly K = (l1 + one) * (l1 + l2 + Poly(2));
  DiffExpOp Lt = (DiffExpOp::d(2, 0) * RatFunc(Poly(2)) + DiffExpOp::d(2, 1) +
                  DiffExpOp::scalar(2, RatFunc(l1 + Poly(2) * l2))) *
                 RatFunc(Rational(1, 3));
  DiffExpOp inner = Lt * Lt - Lt * RatFunc(l2 - Poly(3)) - DiffExpOp::scalar(2, RatFunc(Poly(2) * (l2 - one)));
  DiffExpOp op = DiffExpOp::exp(2, {-2, 1}) * RatFunc(r1) + inner * RatFunc(one, r2);
  op = DiffExpOp::exp(2, {1, 0}) * op * RatFunc(one, r1 * K);
  r.rhs = apply_to_factor(op, 0, r.factors[0], 2);
  r.note = "printed form";
  return r;
}

// ---------------------------------------------------------------------------

std::vector<std::string> relation_ids() {
  return {"TODA_SL2",       "TODA_SL3",          "TODA_SLN_QUADRATIC", "RAISE_SL2_UP",     "RAISE_SL2_DOWN",
          "BAXTER_SL2_A",   "BAXTER_SL2_B",      "BILINEAR_SL2",       "NONLINEAR_SL2_K0", "NONLINEAR_SL2",
          "NONLINEAR_SL2_K2", "PRODUCT_SL2",     "PRODUCT_SL2_SERIES", "RAISE_SL3",        "RAISE_SL3_C1",
          "RAISE_SL3_C2",   "BILINEAR_SL3"};
}

RelationSpec make_relation(const std::string& id, int product_terms) {
  if (id == "TODA_SL2") return toda_relation(2);
  if (id == "TODA_SL3") return toda_relation(3);
  if (id == "TODA_SLN_QUADRATIC") return toda_sln_quadratic(3);
  if (id == "RAISE_SL2_UP") return raise_sl2(true);
  if (id == "RAISE_SL2_DOWN") return raise_sl2(false);
  if (id == "BAXTER_SL2_A") return baxter_sl2(0);
  if (id == "BAXTER_SL2_B") return baxter_sl2(1);
  if (id == "BILINEAR_SL2") return auto_derive_bilinear(2);
  if (id == "NONLINEAR_SL2_K0") return taylor_nonlinear(auto_derive_bilinear(2), 0);
  if (id == "NONLINEAR_SL2") return taylor_nonlinear(auto_derive_bilinear(2), 1);
  if (id == "NONLINEAR_SL2_K2") return taylor_nonlinear(auto_derive_bilinear(2), 2);
  if (id == "PRODUCT_SL2") return product_sl2(product_terms, Branch::integral);
  if (id == "PRODUCT_SL2_SERIES") return product_sl2(product_terms, Branch::series);
  if (id == "RAISE_SL3") return raise_sl3(0);
  if (id == "RAISE_SL3_C1") return raise_sl3(1);
  if (id == "RAISE_SL3_C2") return raise_sl3(2);
  if (id == "BILINEAR_SL3") return auto_derive_bilinear(3);
  if (id == "BAXTER_SL2_A_PRINTED") return printed_baxter_sl2(0);
  if (id == "BAXTER_SL2_B_PRINTED") return printed_baxter_sl2(1);
  if (id == "BILINEAR_SL2_PRINTED") return printed_bilinear_sl2();
  if (id == "NONLINEAR_SL2_PRINTED") return printed_nonlinear_sl2();
  if (id == "RAISE_SL3_PRINTED") return printed_raise_sl3();
  if (id == "PRODUCT_SL2_PRINTED" || id == "BILINEAR_SL3_PRINTED")
    throw std::invalid_argument(id + ": printed equation is not well-formed");
  throw std::out_of_range("unknown relation " + id);
}

ParamMap default_params(const std::string& id) {
  ParamMap p;
  if (id.find("SL3") != std::string::npos || id == "TODA_SLN_QUADRATIC") {
    p = {{lam(1), 0.2}, {lam(2), 0.4}, {muL(1), 1.0}, {muL(2), 0.8}, {muR(1), 0.9}, {muR(2), 1.1}};
    if (id.rfind("BILINEAR_SL3", 0) == 0) {
      p[nu(1)] = 0.35;
      p[nu(2)] = 0.15;
      p[muL(3)] = 0.6;
      p[muL(4)] = 1.2;
      p[muR(3)] = 1.4;
      p[muR(4)] = 0.75;
    }
    return p;
  }
  p = {{lam(1), 0.3}, {muL(1), 1.0}, {muR(1), 1.0}};
  if (id.find("BILINEAR") != std::string::npos || id.find("NONLINEAR") != std::string::npos ||
      id.find("PRODUCT") != std::string::npos) {
    p[lam(1)] = 0.3;
    p[nu(1)] = 0.45;
    p[muL(1)] = 1.0;
    p[muR(1)] = 0.8;
    p[muL(2)] = 0.7;
    p[muR(2)] = 1.3;
  }
  return p;
}

std::vector<std::vector<double>> standard_grid(const RelationSpec& r, bool quick) {
  std::vector<std::vector<double>> g;
  bool sl3 = !r.factors.empty() && r.factors[0].n == 3;
  if (r.nvars == 1) {
    for (double x : {-0.5, 0.0, 0.5, 1.0})
      if (!quick || x != 1.0) g.push_back({x});
  } else if (r.nvars == 2 && !sl3) {
    for (double a : {-0.5, 0.0, 0.5})
      for (double b : {-0.5, 0.0, 0.5}) g.push_back({a, b});
  } else if (r.nvars == 2) {
    for (double a : {-0.2, 0.0, 0.3})
      for (double b : {-0.2, 0.0, 0.3}) g.push_back({a, b});
    if (quick) g = {{0.0, 0.0}, {0.3, -0.2}, {-0.2, 0.3}};
  } else {
    g = {{0.0, 0.0, 0.0, 0.0},  {0.1, -0.1, 0.2, 0.0}, {-0.2, 0.1, 0.0, 0.3},
         {0.3, 0.2, -0.1, -0.2}, {0.0, 0.3, 0.3, 0.1}, {-0.1, -0.2, 0.1, 0.2},
         {0.2, 0.0, -0.2, 0.1},  {0.1, 0.3, 0.2, -0.1}, {-0.3, 0.0, 0.1, 0.0}};
    if (quick) g.resize(2);
  }
  return g;
}

// ---------------------------------------------------------------------------
// numeric evaluation

namespace {

std::map<Var, double> algebraic(const ParamMap& p) {
  std::map<Var, double> a;
  for (auto& [v, x] : p) a[v] = var_kind(v) == VarKind::muR ? -x : x;
  return a;
}

EvalTarget factor_target(const RelationSpec& r, const WFactor& f, const std::map<Var, double>& alg,
                         const VerifyOptions& opt) {
  EvalTarget t;
  t.spec.n = f.n;
  for (auto& x : f.lambda) t.spec.lambda.push_back(x.evaluate_double(alg));
  for (auto& x : f.m) t.spec.mu_left.push_back(x.evaluate_double(alg));
  for (auto& x : f.r) t.spec.mu_right.push_back(-x.evaluate_double(alg));
  if (r.branch == Branch::series) {
    if (f.n != 2) throw std::invalid_argument("series branch is sl(2) only");
    t.kind = EvalTarget::Kind::series_sl2;
    t.mu_prod = f.m[0].evaluate_double(alg) * f.r[0].evaluate_double(alg);
  } else if (f.n == 2) {
    t.kind = EvalTarget::Kind::integral_sl2;
    t.q = opt.sl2_quadrature;
  } else if (f.n == 3) {
    t.kind = EvalTarget::Kind::integral_sl3;
    t.q = opt.sl3_quadrature;
  } else {
    throw std::invalid_argument("numeric evaluation available for n <= 3");
  }
  t.spec.validate();
  return t;
}

std::vector<int> factor_orders(const RelationSpec& r) {
  std::vector<int> ord(r.factors.size(), -1);
  for (auto* side : {&r.lhs, &r.rhs})
    for (auto& t : *side)
      for (auto& [f, a] : t.factors) {
        int s = 0;
        for (int x : a) s += x;
        ord.at(f) = std::max(ord[f], s);
      }
  return ord;
}

struct PointJets {
  std::vector<EvalJet> jets;
  bool converged = true;
};

PointJets factor_jets(const RelationSpec& r, const ParamMap& params, const std::vector<double>& phi,
                      const VerifyOptions& opt) {
  auto alg = algebraic(params);
  auto ord = factor_orders(r);
  PointJets pj;
  pj.jets.resize(r.factors.size());
  for (size_t f = 0; f < r.factors.size(); ++f) {
    if (ord[f] < 0) continue;
    if (ord[f] > Jet2::kMaxOrder) throw std::invalid_argument("derivative order above 4");
    const WFactor& wf = r.factors[f];
    std::vector<double> x;
    for (int v : wf.vars) x.push_back(phi.at(v));
    pj.jets[f] = eval_jet(factor_target(r, wf, alg, opt), x, ord[f]);
    if (!pj.jets[f].converged) pj.converged = false;
  }
  return pj;
}

double side_value(const RelSide& side, const PointJets& pj, const std::map<Var, double>& alg,
                  const std::vector<double>& phi) {
  double sum = 0;
  for (auto& t : side) {
    double e = 0;
    for (size_t i = 0; i < t.k.size(); ++i) e += t.k[i] * phi[i];
    double v = t.coeff.evaluate_double(alg) * std::exp(e);
    for (auto& [f, a] : t.factors) v *= pj.jets[f].d(a[0], a.size() > 1 ? a[1] : 0);
    sum += v;
  }
  return sum;
}

}  // namespace

double evaluate_side(const RelationSpec& r, const RelSide& side, const ParamMap& params, const std::vector<double>& phi,
                     const VerifyOptions& opt) {
  if (static_cast<int>(phi.size()) != r.nvars) throw std::invalid_argument("phi has the wrong dimension");
  return side_value(side, factor_jets(r, params, phi, opt), algebraic(params), phi);
}

ResidualReport verify(const RelationSpec& r, const ParamMap& params, const std::vector<std::vector<double>>& grid,
                      double tol, const VerifyOptions& opt) {
  if (grid.empty()) throw std::invalid_argument("empty grid");
  ResidualReport rep;
  rep.id = r.id;
  rep.params = params;
  rep.tol = tol;
  rep.points.resize(grid.size());
  auto alg = algebraic(params);
  auto one = [&](size_t i) {
    PointResidual& p = rep.points[i];
    p.phi = grid[i];
    try {
      if (static_cast<int>(grid[i].size()) != r.nvars) throw std::invalid_argument("phi has the wrong dimension");
      PointJets pj = factor_jets(r, params, grid[i], opt);
      p.lhs = side_value(r.lhs, pj, alg, grid[i]);
      p.rhs = side_value(r.rhs, pj, alg, grid[i]);
      p.abs_res = std::fabs(p.lhs - p.rhs);
      p.rel_res = relative_residual(p.lhs, p.rhs);
      p.converged = pj.converged;
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception& e) {
      p.converged = false;
      p.error = e.what();
      p.rel_res = NAN;
    }
  };
  bool sl2_only = true;
  for (auto& f : r.factors) sl2_only = sl2_only && f.n == 2;
  if (sl2_only) {
    // the sl(3) evaluator parallelizes internally
    std::vector<std::string> errors(grid.size());
    parallel_for(grid.size(), [&](size_t i) {
      try {
        one(i);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    });
    for (auto& e : errors)
      if (!e.empty()) throw std::invalid_argument(e);
  } else {
    for (size_t i = 0; i < grid.size(); ++i) one(i);
  }
  rep.pass = true;
  for (auto& p : rep.points) {
    if (!p.converged) rep.converged = false;
    if (!(p.rel_res <= tol)) rep.pass = false;
    if (std::isnan(p.rel_res) || p.rel_res > rep.max_rel) rep.max_rel = p.rel_res;
  }
  return rep;
}

std::string relation_str(const RelationSpec& r) {
  auto side = [&](const RelSide& s) {
    if (s.empty()) return std::string("0");
    std::string out;
    for (auto& t : s) {
      if (!out.empty()) out += "\n    + ";
      out += "(" + t.coeff.str() + ")";
      std::string ex;
      for (int i = 0; i < r.nvars; ++i) {
        if (!t.k[i]) continue;
        if (!ex.empty() && t.k[i] > 0) ex += "+";
        ex += (t.k[i] == 1 ? "" : t.k[i] == -1 ? "-" : std::to_string(t.k[i])) + r.var_names[i];
      }
      if (!ex.empty()) out += " exp(" + ex + ")";
      for (auto& [f, a] : t.factors) {
        const WFactor& wf = r.factors[f];
        out += " ";
        for (size_t i = 0; i < a.size(); ++i) {
          if (!a[i]) continue;
          out += "d_" + r.var_names[wf.vars[i]];
          if (a[i] > 1) out += "^" + std::to_string(a[i]);
          out += " ";
        }
        out += wf.label + "(";
        for (size_t i = 0; i < wf.vars.size(); ++i) out += (i ? "," : "") + r.var_names[wf.vars[i]];
        out += ")";
      }
    }
    return out;
  };
  return r.id + "\n  LHS = " + side(r.lhs) + "\n  RHS = " + side(r.rhs);
}

// ---------------------------------------------------------------------------

DiffExpOp raise_lower_closure_defect() {
  auto s = EigenSymbols::standard(2);
  Poly l = V(lam(1)), m = V(muL(1)), r = V(muR(1));
  // W_{l+1} = U W_l, m W_l = L W_{l+1}
  DiffExpOp U = sl2_channel(true, 0, s, l).primal;
  Channel down = sl2_channel(false, 0, s, l + Poly(1));
  DiffExpOp Dn = down.primal * RatFunc(Poly(1), m);
  DiffExpOp H = compile_matrix_element(casimir2(2), Side::right, s);
  H -= DiffExpOp::scalar(1, RatFunc(casimir_scalar(2, {l})));
  DiffExpOp defect = Dn * U - DiffExpOp::scalar(1, RatFunc(1));
  defect += DiffExpOp::exp(1, {2}) * RatFunc(Poly(1), Poly(2) * m * r) * H;
  // down.dual is m: the lowering relation has no other normalization
  if (down.dual.terms().size() != 1) throw std::logic_error("unexpected lowering channel");
  return defect;
}

std::vector<ErratumEntry> erratum_table(const VerifyOptions& opt) {
  std::vector<ErratumEntry> out;
  auto numeric = [&](const std::string& id, const std::string& derived) {
    RelationSpec p = make_relation(id);
    ParamMap params = default_params(derived);
    auto rep = verify(p, params, standard_grid(p, true), p.tol, opt);
    std::ostringstream os;
    os.precision(3);
    os << "max rel residual " << rep.max_rel << " (tol " << p.tol << ")";
    out.push_back({derived, rep.pass ? "agrees" : "differs", os.str()});
  };
  numeric("BAXTER_SL2_A_PRINTED", "BAXTER_SL2_A");
  numeric("BAXTER_SL2_B_PRINTED", "BAXTER_SL2_B");
  numeric("BILINEAR_SL2_PRINTED", "BILINEAR_SL2");
  numeric("NONLINEAR_SL2_PRINTED", "NONLINEAR_SL2");
  out.push_back({"PRODUCT_SL2", "not well-formed",
                 "unbound n, m in the binomials; target weights l+nu-k instead of l+nu-2k"});
  numeric("RAISE_SL3_PRINTED", "RAISE_SL3");
  out.push_back({"BILINEAR_SL3", "not well-formed",
                 "primed and unprimed phi mixed inside one operator; bare mu symbols; unbalanced parentheses"});
  for (auto& id : whittaker_image_ids()) {
    if (id == "SL2_CG_K") continue;
    bool differs = false;
    WhittakerImage a = whittaker_image(id, false), b = whittaker_image(id, true);
    if (a.terms.size() != b.terms.size()) differs = true;
    for (size_t i = 0; !differs && i < a.terms.size(); ++i)
      differs = !a.terms[i].pref.equals(b.terms[i].pref) || a.terms[i].op != b.terms[i].op;
    if (!differs) continue;
    ImageCheck c = verify_whittaker_image(b, 6, 2, 7);
    out.push_back({id, c.pass ? "agrees" : "differs", c.pass ? "printed form passes" : "printed form fails the direct image check"});
  }
  return out;
}

}  // namespace toda
