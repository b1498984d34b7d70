#include "toda/intertwiners.hpp"

#include <stdexcept>

#include "toda/linsolve.hpp"
#include "toda/whittaker.hpp"

namespace toda {

std::string Space::str() const {
  static const char* kinds[] = {"bw", "verma", "dual_verma", "bw_pair"};
  std::string s = std::string(kinds[static_cast<int>(kind)]) + "(sl" + std::to_string(n) + "; ";
  for (size_t i = 0; i < lambda.size(); ++i) s += (i ? "," : "") + lambda[i].str();
  if (kind == SpaceKind::bw_pair) {
    s += " | ";
    for (size_t i = 0; i < nu.size(); ++i) s += (i ? "," : "") + nu[i].str();
  }
  s += ")";
  if (fin == FinFactor::standard) s += " x V";
  if (fin == FinFactor::twisted) s += " x V'";
  return s;
}

Poly encode_pbw(const UEAElement& X) {
  Poly out;
  for (auto& [m, c] : X.terms()) {
    Monomial mono;
    for (size_t g = 0; g < m.size(); ++g)
      if (m[g]) mono.f.push_back({pbw(static_cast<int>(g)), m[g]});
    out += Poly(c) * [&] {
      Poly p;
      p.add_term(mono, 1);
      return p;
    }();
  }
  return out;
}

UEAElement decode_pbw(int n, const Poly& p) {
  const auto& L = SlAlgebra::get(n);
  UEAElement out(n);
  for (auto& [mono, c] : p.split(VarKind::pbw)) {
    Mono m(L.dim, 0);
    for (auto& [v, e] : mono.f) m[var_index(v)] = static_cast<std::uint8_t>(e);
    out.add_term(m, c);
  }
  return out;
}

namespace {

bool is_module_var(const Space& s, Var v) {
  VarKind k = var_kind(v);
  switch (s.kind) {
    case SpaceKind::bw: return k == VarKind::x;
    case SpaceKind::bw_pair: return k == VarKind::x || k == VarKind::y;
    default: return k == VarKind::pbw;
  }
}

Poly mono_poly(const Monomial& m) {
  Poly p;
  p.add_term(m, 1);
  return p;
}

const std::vector<RealizedGenerator>& fields_of(const Space& s, bool second) {
  auto& slot = second ? s.fields_y : s.fields_x;
  if (!slot) {
    if (second)
      slot = std::make_shared<const std::vector<RealizedGenerator>>(derive_generator_fields(s.n, s.nu, VarKind::y));
    else
      slot = std::make_shared<const std::vector<RealizedGenerator>>(derive_generator_fields(s.n, s.lambda, VarKind::x));
  }
  return *slot;
}

Poly module_act(const Space& s, int g, const Poly& v) {
  switch (s.kind) {
    case SpaceKind::bw: return apply_field(fields_of(s, false)[g], v);
    case SpaceKind::bw_pair: return apply_field(fields_of(s, false)[g], v) + apply_field(fields_of(s, true)[g], v);
    case SpaceKind::verma:
      return encode_pbw(verma_reduce(UEAElement::generator(s.n, g) * decode_pbw(s.n, v), s.lambda));
    case SpaceKind::dual_verma:
      return encode_pbw(dual_verma_reduce(decode_pbw(s.n, v) * UEAElement::generator(s.n, g), s.lambda));
  }
  return Poly();
}

std::vector<Rational> fin_matrix(const Space& s, int g) {
  const auto& L = SlAlgebra::get(s.n);
  if (s.fin == FinFactor::twisted) {
    auto [sign, tgt] = diagram_image(s.n, g);
    auto m = L.matrix(tgt);
    for (auto& q : m) q *= sign;
    return m;
  }
  return L.matrix(g);
}

}  // namespace

std::map<Monomial, Poly> module_split(const Space& s, const Poly& p) {
  std::map<Monomial, Poly> out;
  for (auto& [m, c] : p.terms()) {
    Monomial mod, par;
    for (auto& f : m.f) (is_module_var(s, f.first) ? mod : par).f.push_back(f);
    out[mod].add_term(par, c);
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.is_zero())
      it = out.erase(it);
    else
      ++it;
  }
  return out;
}

ModVec act(const Space& s, int g, const ModVec& v) {
  int nc = s.components();
  if (static_cast<int>(v.size()) != nc) throw std::invalid_argument("vector shape does not match space " + s.str());
  ModVec out(nc);
  for (int i = 0; i < nc; ++i) out[i] = module_act(s, g, v[i]);
  if (s.fin == FinFactor::none) return out;
  auto M = fin_matrix(s, g);
  int n = s.n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Rational& c = s.right_action() ? M[j * n + i] : M[i * n + j];
      if (c != 0 && !v[j].is_zero()) out[i] += v[j] * c;
    }
  return out;
}

std::vector<std::pair<int, Monomial>> space_basis(const Space& s, int d) {
  std::vector<Var> vars;
  const auto& L = SlAlgebra::get(s.n);
  switch (s.kind) {
    case SpaceKind::bw: vars = cell_vars(s.n, VarKind::x); break;
    case SpaceKind::bw_pair:
      vars = cell_vars(s.n, VarKind::x);
      for (Var v : cell_vars(s.n, VarKind::y)) vars.push_back(v);
      break;
    case SpaceKind::verma:
      for (int g = 0; g < L.first_h(); ++g) vars.push_back(pbw(g));
      break;
    case SpaceKind::dual_verma:
      for (int g = L.first_e(); g < L.dim; ++g) vars.push_back(pbw(g));
      break;
  }
  std::vector<std::pair<int, Monomial>> out;
  auto monos = monomials_upto(vars, d);
  for (int c = 0; c < s.components(); ++c)
    for (auto& m : monos) out.push_back({c, m});
  return out;
}

ModVec apply_map_raw(const IntertwinerMap& m, const ModVec& v) {
  if (static_cast<int>(v.size()) != m.source.components())
    throw std::invalid_argument("shape mismatch: map " + m.map_id + " expects " + m.source.str());
  ModVec out(m.target.components());
  for (size_t c = 0; c < v.size(); ++c)
    for (auto& [mono, coeff] : module_split(m.source, v[c])) {
      ModVec img = m.on_basis(static_cast<int>(c), mono);
      for (size_t t = 0; t < out.size(); ++t)
        if (!img[t].is_zero()) out[t] += coeff * img[t];
    }
  return out;
}

MapImage apply_map(const IntertwinerMap& m, const ModVec& v) { return {m.prefactor, apply_map_raw(m, v)}; }

namespace {

std::string vec_str(const ModVec& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + "]";
}

}  // namespace

EquivarianceReport check_equivariance(const IntertwinerMap& m, int D) {
  EquivarianceReport rep;
  const auto& L = SlAlgebra::get(m.source.n);
  std::vector<int> gens;
  for (int i = 0; i < L.rank; ++i) {
    gens.push_back(L.e(i));
    gens.push_back(L.f(i));
    gens.push_back(L.h(i));
  }
  for (auto& [c, mono] : space_basis(m.source, D - 1)) {
    ModVec b(m.source.components());
    b[c] = mono_poly(mono);
    ModVec mb = apply_map_raw(m, b);
    for (int g : gens) {
      ModVec lhs = apply_map_raw(m, act(m.source, g, b));
      ModVec rhs = act(m.target, g, mb);
      ++rep.checked;
      if (lhs != rhs) {
        rep.pass = false;
        rep.failure = L.gens[g].name + " on component " + std::to_string(c) + " basis " + mono_poly(mono).str() +
                      ": map(a v) = " + vec_str(lhs) + ", a map(v) = " + vec_str(rhs);
        return rep;
      }
    }
  }
  return rep;
}

namespace {

// Monomial in module symbols from (var, exponent) pairs; zero if an exponent is negative.
Poly pm(std::initializer_list<std::pair<Var, int>> l) {
  std::map<Var, int> e;
  for (auto& [v, k] : l) {
    if (k < 0) return Poly();
    if (k > 0) e[v] += k;
  }
  Monomial m;
  for (auto& [v, k] : e) m.f.push_back({v, static_cast<std::uint16_t>(k)});
  return mono_poly(m);
}

Space make_space(SpaceKind k, int n, Weight l, FinFactor fin = FinFactor::none) {
  Space s;
  s.kind = k;
  s.n = n;
  s.lambda = std::move(l);
  s.fin = fin;
  return s;
}

void require_nonzero(const std::vector<std::pair<Poly, std::string>>& dens) {
  for (auto& [p, name] : dens)
    if (p.is_zero()) throw std::domain_error("degenerate weight: " + name + " vanishes");
}

IntertwinerMap sl2_map(const std::string& id, const Poly& l) {
  const Poly one(1);
  Var F = pbw(0), E = pbw(2);
  IntertwinerMap m;
  m.map_id = id;
  auto V = [](const Poly& w) { return Weight{w}; };
  if (id == "SL2_PHI_PLUS") {
    m.source = make_space(SpaceKind::verma, 2, V(l + one));
    m.target = make_space(SpaceKind::verma, 2, V(l), FinFactor::standard);
    m.on_basis = [F](int, const Monomial& mo) {
      int k = mo.exponent(F);
      return ModVec{pm({{F, k}}), Poly(k) * pm({{F, k - 1}})};
    };
  } else if (id == "SL2_PHI_MINUS") {
    m.source = make_space(SpaceKind::verma, 2, V(l - one));
    m.target = make_space(SpaceKind::verma, 2, V(l), FinFactor::standard);
    m.on_basis = [F, l](int, const Monomial& mo) {
      int k = mo.exponent(F);
      return ModVec{pm({{F, k + 1}}), (Poly(k) - l) * pm({{F, k}})};
    };
  } else if (id == "SL2_PHI_PLUS_INV") {
    require_nonzero({{l + one, "lambda+1"}});
    m.source = make_space(SpaceKind::verma, 2, V(l), FinFactor::standard);
    m.target = make_space(SpaceKind::verma, 2, V(l + one));
    m.prefactor = RatFunc(one, l + one);
    m.on_basis = [F, l](int c, const Monomial& mo) {
      int k = mo.exponent(F);
      if (c == 0) return ModVec{(l + Poly(1 - k)) * pm({{F, k}})};
      return ModVec{pm({{F, k + 1}})};
    };
  } else if (id == "SL2_PHI_MINUS_INV") {
    require_nonzero({{l + one, "lambda+1"}});
    m.source = make_space(SpaceKind::verma, 2, V(l), FinFactor::standard);
    m.target = make_space(SpaceKind::verma, 2, V(l - one));
    m.prefactor = RatFunc(one, l + one);
    m.on_basis = [F](int c, const Monomial& mo) {
      int k = mo.exponent(F);
      if (c == 0) return ModVec{Poly(k) * pm({{F, k - 1}})};
      return ModVec{-pm({{F, k}})};
    };
  } else if (id == "SL2_PHI_PLUS_DUAL") {
    m.source = make_space(SpaceKind::dual_verma, 2, V(l + one));
    m.target = make_space(SpaceKind::dual_verma, 2, V(l), FinFactor::standard);
    m.on_basis = [E](int, const Monomial& mo) {
      int k = mo.exponent(E);
      return ModVec{pm({{E, k}}), Poly(k) * pm({{E, k - 1}})};
    };
  } else if (id == "SL2_PHI_MINUS_DUAL") {
    require_nonzero({{l + one, "lambda+1"}});
    m.source = make_space(SpaceKind::dual_verma, 2, V(l - one));
    m.target = make_space(SpaceKind::dual_verma, 2, V(l), FinFactor::standard);
    m.prefactor = RatFunc(one, l + one);
    m.on_basis = [E, l](int, const Monomial& mo) {
      int k = mo.exponent(E);
      return ModVec{pm({{E, k + 1}}), (Poly(k) - l) * pm({{E, k}})};
    };
  } else if (id == "SL2_PHI_PLUS_INV_DUAL") {
    require_nonzero({{l + one, "lambda+1"}});
    m.source = make_space(SpaceKind::dual_verma, 2, V(l), FinFactor::standard);
    m.target = make_space(SpaceKind::dual_verma, 2, V(l + one));
    m.prefactor = RatFunc(one, l + one);
    m.on_basis = [E, l](int c, const Monomial& mo) {
      int k = mo.exponent(E);
      if (c == 0) return ModVec{(l + Poly(1 - k)) * pm({{E, k}})};
      return ModVec{pm({{E, k + 1}})};
    };
  } else if (id == "SL2_PHI_MINUS_INV_DUAL") {
    m.source = make_space(SpaceKind::dual_verma, 2, V(l), FinFactor::standard);
    m.target = make_space(SpaceKind::dual_verma, 2, V(l - one));
    m.prefactor = RatFunc(l);
    m.on_basis = [E](int c, const Monomial& mo) {
      int k = mo.exponent(E);
      if (c == 0) return ModVec{Poly(k) * pm({{E, k - 1}})};
      return ModVec{-pm({{E, k}})};
    };
  } else {
    throw std::invalid_argument("unknown map id " + id);
  }
  return m;
}

IntertwinerMap cg_map(const Poly& l, const Poly& v, int k) {
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  IntertwinerMap m;
  m.map_id = "SL2_CG_K";
  m.source = make_space(SpaceKind::bw_pair, 2, {l});
  m.source.nu = {v};
  m.target = make_space(SpaceKind::bw, 2, {l + v - Poly(2 * k)});
  std::vector<Poly> a;
  // common denominator: (k!)^2 (nu)_k-free form; pattern coefficients are polynomial after scaling by k!
  for (int i = 0; i <= k; ++i) {
    RatFunc c = cg_pattern_coefficient(l, v, k, i);
    a.push_back(c.num());
    if (c.den() != Poly(1)) {
      // den is a positive constant here (factorials)
      Rational d = c.den().constant_term();
      a.back() *= Rational(1) / d;
    }
  }
  Var X = cellx(1, 2), Y = celly(1, 2);
  m.on_basis = [a, k, X, Y](int, const Monomial& mo) {
    int na = mo.exponent(X), nb = mo.exponent(Y);
    Poly s;
    for (int i = 0; i <= k; ++i) {
      if (k - i > na || i > nb) continue;
      Rational f = 1;
      for (int t = 0; t < k - i; ++t) f *= na - t;
      for (int t = 0; t < i; ++t) f *= nb - t;
      s += a[i] * f;
    }
    return ModVec{s * pm({{X, na + nb - k}})};
  };
  return m;
}

IntertwinerMap sl3_bw_map(const std::string& id, const Weight& lw) {
  const Poly& l1 = lw[0];
  const Poly& l2 = lw[1];
  Var X1 = cellx(1, 2), X2 = cellx(2, 3), X3 = cellx(1, 3);
  IntertwinerMap m;
  m.map_id = id;
  if (id == "SL3_PHI_PLUS") {
    m.source = make_space(SpaceKind::bw, 3, lw, FinFactor::standard);
    m.target = make_space(SpaceKind::bw, 3, shift(lw, {1, 0}));
    m.on_basis = [=](int c, const Monomial& mo) {
      Poly p = mono_poly(mo);
      if (c == 1) p *= Poly::var(X1);
      if (c == 2) p *= Poly::var(X3);
      return ModVec{p};
    };
    return m;
  }
  require_nonzero({{l1 + Poly(1), "lambda1+1"}, {l1 + l2 + Poly(2), "lambda1+lambda2+2"}});
  m.source = make_space(SpaceKind::bw, 3, shift(lw, {1, 0}));
  m.target = make_space(SpaceKind::bw, 3, lw, FinFactor::standard);
  Poly K = (l1 + Poly(1)) * (l1 + l2 + Poly(2));
  m.prefactor = RatFunc(Poly(1), K);
  bool printed = id == "SL3_PHI_PLUS_INV_PRINTED";
  if (!printed && id != "SL3_PHI_PLUS_INV") throw std::invalid_argument("unknown map id " + id);
  m.on_basis = [=](int, const Monomial& mo) {
    int a = mo.exponent(X1), b = mo.exponent(X2), c = mo.exponent(X3);
    Poly A(a), B(b), C(c);
    ModVec out(3);
    out[2] = A * B * pm({{X1, a - 1}, {X2, b - 1}, {X3, c}}) + (l1 + Poly(2) + B) * C * pm({{X1, a}, {X2, b}, {X3, c - 1}});
    out[1] = A * (l1 + l2 + Poly(2) - B) * pm({{X1, a - 1}, {X2, b}, {X3, c}});
    if (printed)
      out[1] += C * C * (l2 - B) * pm({{X1, a - 1}, {X2, b + 1}, {X3, c - 1}});
    else
      out[1] += C * (l2 - B) * pm({{X1, a}, {X2, b + 1}, {X3, c - 1}});
    out[0] = -(A * B) * pm({{X1, a - 1}, {X2, b - 1}, {X3, c + 1}}) +
             C * (B - l2) * pm({{X1, a + 1}, {X2, b + 1}, {X3, c - 1}}) +
             (K - A * (l1 + l2 + Poly(2)) + A * B - C * (l1 + Poly(2)) - B * C) * mono_poly(mo);
    return out;
  };
  return m;
}

IntertwinerMap sl3_verma_map(const std::string& id, const Weight& lw) {
  const Poly& l1 = lw[0];
  const Poly& l2 = lw[1];
  Var F1 = pbw(0), F2 = pbw(1), F3 = pbw(2);
  IntertwinerMap m;
  m.map_id = id;
  m.target = make_space(SpaceKind::verma, 3, lw, FinFactor::standard);
  if (id == "SL3_VERMA_PLUS_10") {
    m.source = make_space(SpaceKind::verma, 3, shift(lw, {1, 0}));
    m.on_basis = [=](int, const Monomial& mo) {
      int a = mo.exponent(F1), b = mo.exponent(F2), c = mo.exponent(F3);
      return ModVec{mono_poly(mo), Poly(a) * pm({{F1, a - 1}, {F2, b}, {F3, c}}),
                    Poly(c) * pm({{F1, a}, {F2, b}, {F3, c - 1}})};
    };
  } else if (id == "SL3_VERMA_M11") {
    m.source = make_space(SpaceKind::verma, 3, shift(lw, {-1, 1}));
    m.on_basis = [=](int, const Monomial& mo) {
      int a = mo.exponent(F1), b = mo.exponent(F2), c = mo.exponent(F3);
      Poly A(a), B(b), C(c);
      return ModVec{pm({{F1, a + 1}, {F2, b}, {F3, c}}) - B * pm({{F1, a}, {F2, b - 1}, {F3, c + 1}}),
                    (A - l1) * mono_poly(mo) - A * B * pm({{F1, a - 1}, {F2, b - 1}, {F3, c + 1}}),
                    B * (l1 - C) * pm({{F1, a}, {F2, b - 1}, {F3, c}}) + C * pm({{F1, a + 1}, {F2, b}, {F3, c - 1}})};
    };
  } else if (id == "SL3_VERMA_0M1") {
    m.source = make_space(SpaceKind::verma, 3, shift(lw, {0, -1}));
    m.on_basis = [=](int, const Monomial& mo) {
      int a = mo.exponent(F1), b = mo.exponent(F2), c = mo.exponent(F3);
      Poly A(a), B(b), C(c), s = l1 + l2 + Poly(1);
      return ModVec{pm({{F1, a + 1}, {F2, b + 1}, {F3, c}}) + (l2 - B) * pm({{F1, a}, {F2, b}, {F3, c + 1}}),
                    A * (l2 - B) * pm({{F1, a - 1}, {F2, b}, {F3, c + 1}}) + (A - s) * pm({{F1, a}, {F2, b + 1}, {F3, c}}),
                    (l2 - B) * (C - s) * mono_poly(mo) + C * pm({{F1, a + 1}, {F2, b + 1}, {F3, c - 1}})};
    };
  } else {
    throw std::invalid_argument("unknown map id " + id);
  }
  // formulas are written with f3 = [f1,f2] = -f12 and |2> = f3|0>: convert both to the internal basis
  auto raw = m.on_basis;
  m.on_basis = [raw, F3](int c, const Monomial& mo) {
    ModVec out = raw(c, mo);
    out[2] = -out[2];
    for (auto& p : out) {
      Poly q;
      for (auto& [t, v] : p.terms()) q.add_term(t, (t.exponent(F3) % 2) ? Rational(-v) : v);
      p = q;
    }
    if (mo.exponent(F3) % 2)
      for (auto& p : out) p = -p;
    return out;
  };
  return m;
}

}  // namespace

std::vector<std::string> map_ids() {
  return {"SL2_PHI_PLUS",         "SL2_PHI_MINUS",          "SL2_PHI_PLUS_INV",         "SL2_PHI_MINUS_INV",
          "SL2_PHI_PLUS_DUAL",    "SL2_PHI_MINUS_DUAL",     "SL2_PHI_PLUS_INV_DUAL",    "SL2_PHI_MINUS_INV_DUAL",
          "SL2_CG_K",             "SL3_PHI_PLUS",           "SL3_PHI_PLUS_INV",         "SL3_PHI_PLUS_INV_PRINTED",
          "SL3_VERMA_PLUS_10",    "SL3_VERMA_M11",          "SL3_VERMA_0M1"};
}

IntertwinerMap build_map(const std::string& id, std::optional<Weight> lambda, std::optional<Weight> nu, int k) {
  bool sl3 = id.rfind("SL3", 0) == 0;
  Weight lw = lambda ? *lambda : symbolic_weight(sl3 ? 3 : 2, VarKind::lambda);
  if (static_cast<int>(lw.size()) != (sl3 ? 2 : 1)) throw std::invalid_argument("weight rank mismatch for " + id);
  if (id == "SL2_CG_K") {
    Weight nw = nu ? *nu : symbolic_weight(2, VarKind::nu);
    return cg_map(lw[0], nw[0], k);
  }
  if (id.rfind("SL2_PHI", 0) == 0) return sl2_map(id, lw[0]);
  if (id.rfind("SL3_VERMA", 0) == 0) return sl3_verma_map(id, lw);
  if (sl3) return sl3_bw_map(id, lw);
  throw std::invalid_argument("unknown map id " + id);
}

IntertwinerMap perturbed_sl2_phi_plus() {
  IntertwinerMap m = build_map("SL2_PHI_PLUS");
  m.map_id = "SL2_PHI_PLUS_PERTURBED";
  Var F = pbw(0);
  m.on_basis = [F](int, const Monomial& mo) {
    int k = mo.exponent(F);
    return ModVec{pm({{F, k}}), Poly(k + 1) * pm({{F, k - 1}})};
  };
  return m;
}

RatFunc cg_pattern_coefficient(const Poly& l, const Poly& v, int k, int i) {
  // (-1)^i/((k-i)! i!) (nu)_k/(nu)_i (lambda)_k/(lambda)_{k-i}, falling factorials
  Poly num = falling(v - Poly(i), k - i) * falling(l - Poly(k - i), i);
  Rational f = 1;
  for (int t = 2; t <= k - i; ++t) f *= t;
  for (int t = 2; t <= i; ++t) f *= t;
  if (i % 2) f = -f;
  return RatFunc(num, Poly(f));
}

CgTable solve_cg_coefficients(int k, int D) {
  if (k < 0 || k > D) throw std::invalid_argument("need 0 <= k <= D");
  CgTable t;
  t.k = k;
  t.D = D;
  Poly L = Poly::var(lam(1)), N = Poly::var(nu(1));
  // c_{k-i,i} / c_{k,0} = (-1)^i (nu-i)...(nu-k+1) (lambda-k+i)...(lambda-k+1) / (nu)_k
  for (int i = 0; i <= k; ++i) {
    Poly num = falling(N - Poly(i), k - i) * falling(L - Poly(k - i), i);
    if (i % 2) num = -num;
    t.printed_level.push_back(RatFunc(num, falling(N, k)));
  }

  const std::vector<std::pair<Rational, Rational>> pts = {
      {Rational(7, 3), Rational(5, 2)}, {Rational(-3, 7), Rational(11, 5)}, {Rational(13, 4), Rational(-2, 9)}};
  for (auto& [lv, nv] : pts) {
    CgTable::Sample smp;
    smp.lambda = lv;
    smp.nu = nv;
    std::map<std::pair<int, int>, int> col;
    for (int s = k; s <= D; ++s)
      for (int a = 0; a <= s; ++a) col[{a, s - a}] = static_cast<int>(col.size());
    auto C = [&](int a, int b) { return (a < 0 || b < 0 || a + b < k || a + b > D) ? -1 : col.at({a, b}); };
    SparseSystem sys;
    sys.ncols = static_cast<int>(col.size());
    auto add = [](std::map<int, Rational>& row, int c, const Rational& v) {
      if (c >= 0) row[c] += v;
    };
    // e: a c_{a-1,b} + b c_{a,b-1} = (a+b-k) c_{a,b}
    for (int s = k + 1; s <= D; ++s)
      for (int a = 0; a <= s; ++a) {
        int b = s - a;
        std::map<int, Rational> row;
        add(row, C(a - 1, b), a);
        add(row, C(a, b - 1), b);
        add(row, C(a, b), -(s - k));
        sys.add_row(row, 0);
      }
    // f: (lambda-a) c_{a+1,b} + (nu-b) c_{a,b+1} = (lambda+nu-k-a-b) c_{a,b}
    for (int s = std::max(k - 1, 0); s <= D - 1; ++s)
      for (int a = 0; a <= s; ++a) {
        int b = s - a;
        std::map<int, Rational> row;
        add(row, C(a + 1, b), lv - a);
        add(row, C(a, b + 1), nv - b);
        add(row, C(a, b), -(lv + nv - k - s));
        sys.add_row(row, 0);
      }
    auto hom = solve_sparse(sys);
    smp.kernel_dim = hom.status == SolveStatus::inconsistent ? -1 : static_cast<int>(hom.kernel.size());
    std::map<int, Rational> norm;
    norm[C(k, 0)] = 1;
    sys.add_row(norm, 1);
    auto sol = solve_sparse(sys);
    if (sol.status != SolveStatus::unique) {
      smp.match = false;
      smp.mismatch = "no unique solution";
      t.all_match = false;
      t.samples.push_back(smp);
      continue;
    }
    std::map<Var, Rational> at{{lam(1), lv}, {nu(1), nv}};
    std::vector<Rational> a;
    for (int i = 0; i <= k; ++i) a.push_back(cg_pattern_coefficient(L, N, k, i).evaluate(at));
    for (auto& [ab, c] : col) {
      smp.solved[ab] = sol.x[c];
      auto [aa, bb] = ab;
      Rational pred = 0;
      for (int i = 0; i <= k; ++i) {
        if (k - i > aa || i > bb) continue;
        Rational f = a[i];
        for (int s = 0; s < k - i; ++s) f *= aa - s;
        for (int s = 0; s < i; ++s) f *= bb - s;
        pred += f;
      }
      Rational pred_norm = pred / (a[0] * [&] {
                             Rational f = 1;
                             for (int s = 2; s <= k; ++s) f *= s;
                             return f;
                           }());
      if (pred_norm != sol.x[c] && smp.match) {
        smp.match = false;
        smp.mismatch = "c_{" + std::to_string(aa) + "," + std::to_string(bb) + "}: solved " + sol.x[c].get_str() +
                       ", pattern " + pred_norm.get_str();
      }
    }
    if (!smp.match || smp.kernel_dim != 1) t.all_match = false;
    t.samples.push_back(std::move(smp));
  }
  return t;
}

}  // namespace toda
