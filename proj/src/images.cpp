#include "toda/images.hpp"

#include <random>
#include <stdexcept>

#include "toda/whittaker.hpp"

namespace toda {

namespace {

UEAElement scalar(int n, const Poly& p) { return UEAElement(n, p); }
Poly V(Var v) { return Poly::var(v); }

}  // namespace

std::string WhittakerImage::str() const {
  std::string s = id + (printed ? " [printed]" : " [derived]");
  for (auto& t : terms)
    s += "\n  fin " + std::to_string(t.fin) + " module " + std::to_string(t.module) + ": (" + t.pref.str() + ") * (" +
         t.op.str() + ")";
  return s;
}

std::vector<std::string> whittaker_image_ids() {
  return {"SL2_PHI_PLUS", "SL2_PHI_MINUS", "SL2_PHI_INV", "SL2_PHI_DUAL", "SL2_CG_K", "SL3_PHI_PLUS", "SL3_PHI_PLUS_INV"};
}

WhittakerImage whittaker_image(const std::string& id, bool printed, int k) {
  WhittakerImage img;
  img.id = id;
  img.printed = printed;
  img.k = k;
  auto add = [&](int fin, int module, RatFunc pref, UEAElement op) { img.terms.push_back({fin, module, pref, op}); };
  if (id.rfind("SL2", 0) == 0) {
    const int n = 2;
    Poly l = V(lam(1)), mu = V(muR(1)), m = V(muL(1)), one(1);
    UEAElement h = UEAElement::h(n, 0);
    if (id == "SL2_PHI_PLUS") {
      add(0, 0, RatFunc(one, Poly(2) * (l + one)), h + scalar(n, l + Poly(2)));
      add(1, 0, RatFunc(mu, l + one), scalar(n, one));
    } else if (id == "SL2_PHI_MINUS") {
      add(0, 0, RatFunc(l, Poly(2) * mu), scalar(n, l) - h);
      add(1, 0, RatFunc(-l), scalar(n, one));
    } else if (id == "SL2_PHI_INV") {
      add(0, 0, RatFunc(1), scalar(n, one));
      add(0, 1, RatFunc(mu, l * (l + one)), scalar(n, one));
      add(1, 0, RatFunc(one, Poly(2) * mu), scalar(n, l + one) - h);
      add(1, 1, RatFunc(Poly(-1), printed ? Poly(2) * l : Poly(2) * l * (l + one)), scalar(n, l + one) + h);
    } else if (id == "SL2_PHI_DUAL") {
      add(0, 0, RatFunc(1), scalar(n, one));
      add(0, 1, RatFunc(m), scalar(n, one));
      add(1, 0, RatFunc(one, Poly(2) * m), scalar(n, l + one) - h);
      add(1, 1, RatFunc(Poly(-1), printed ? Poly(2) * l : Poly(2)), scalar(n, l + one) + h);
    } else if (id == "SL2_CG_K") {
      Poly nu1 = V(nu(1)), m1 = V(muR(1)), m2 = V(muR(2));
      RatFunc c;
      for (int i = 0; i <= k; ++i) c += cg_pattern_coefficient(l, nu1, k, i) * RatFunc(m1.pow(k - i) * m2.pow(i));
      add(0, 0, c, scalar(n, one));
    } else {
      throw std::invalid_argument("unknown image id " + id);
    }
    return img;
  }
  const int n = 3;
  Poly l1 = V(lam(1)), l2 = V(lam(2)), r1 = V(muR(1)), r2 = V(muR(2)), one(1);
  UEAElement h1 = UEAElement::h(n, 0), h2 = UEAElement::h(n, 1);
  if (id == "SL3_PHI_PLUS") {
    // h acts on V_{lambda+(1,0)}
    UEAElement S1 = scalar(n, Poly(2) * (l1 + one) + l2) - Poly(2) * h1 - h2;
    UEAElement S2 = scalar(n, l1 + one + Poly(2) * l2) - h1 - Poly(2) * h2;
    add(0, 0, RatFunc(1), scalar(n, one));
    add(1, 0, RatFunc(one, Poly(3) * r1), S1);
    UEAElement f2 = UEAElement::f(n, 1);
    if (printed)
      add(2, 0, RatFunc(one, Poly(3) * r1 * r2), Poly(3) * r2 * f2 + r2 * S2 - l2 * S2);
    else
      add(2, 0, RatFunc(one, Poly(9) * r1 * r2), Poly(9) * r2 * f2 + S2 * S2 - Poly(3) * (l2 + one) * S2);
  } else if (id == "SL3_PHI_PLUS_INV") {
    Poly K = (l1 + one) * (l1 + l2 + Poly(2));
    UEAElement T1 = Poly(2) * h1 + h2 + scalar(n, l1 + Poly(2) * l2);  // 3 Lt1
    UEAElement T2 = Poly(2) * h2 + h1 + scalar(n, l2 + Poly(2) * l1);  // 3 Lt2
    UEAElement f1 = UEAElement::f(n, 0);
    if (printed) {
      add(2, 0, RatFunc(r1 * r2, K), scalar(n, one));
      add(1, 0, RatFunc(one, Poly(3) * r2 * K), T2 + scalar(n, Poly(6)));
      add(0, 0, RatFunc(one, Poly(9) * r2 * r2 * K), Poly(9) * r2 * f1 + T1 * T1 - Poly(3) * (l2 - Poly(3)) * T1);
    } else {
      add(2, 0, RatFunc(r1 * r2, K), scalar(n, one));
      add(1, 0, RatFunc(r1, Poly(3) * K), T2 + scalar(n, Poly(6)));
      add(0, 0, RatFunc(one, Poly(9) * K),
          Poly(9) * r1 * f1 + T1 * T1 - Poly(3) * (l2 - Poly(3)) * T1 - scalar(n, Poly(18) * (l2 - one)));
    }
  } else {
    throw std::invalid_argument("unknown image id " + id);
  }
  return img;
}

namespace {

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-19, 19), den(2, 9);
  while (true) {
    Rational q(num(rng), den(rng));
    q.canonicalize();
    if (q.get_den() != 1 && q != 0) return q;
  }
}

Rational positive_rational(std::mt19937_64& rng) {
  Rational q = random_rational(rng);
  return q < 0 ? Rational(-q) : q;
}

Poly verma_whittaker(const Rational& l, const Rational& mu, int D, int gen) {
  Poly out;
  Rational c = 1;
  for (int k = 0; k <= D; ++k) {
    if (k > 0) c *= mu / (k * (l - (k - 1)));
    out += Poly(c) * Poly::var(pbw(gen), k);
  }
  return out;
}

Poly apply_op(SpaceKind kind, const Weight& w, const UEAElement& op, const Poly& v) {
  int n = op.n();
  switch (kind) {
    case SpaceKind::verma: return encode_pbw(verma_reduce(op * decode_pbw(n, v), w));
    case SpaceKind::dual_verma: return encode_pbw(dual_verma_reduce(decode_pbw(n, v) * op, w));
    default: return apply_uea(derive_generator_fields(n, w), op, v);
  }
}

}  // namespace

ImageCheck verify_whittaker_image(const WhittakerImage& img, int D, int nsamples, std::uint64_t seed) {
  ImageCheck rep;
  std::mt19937_64 rng(seed);
  int maxdeg = 0;
  for (auto& t : img.terms) maxdeg = std::max(maxdeg, t.op.degree());
  // maps lower degree by at most 2 (k for the Clebsch-Gordan maps)
  const int cut = D - 2 - maxdeg - img.k;
  if (cut < 0) throw std::invalid_argument("truncation degree too small for the operator degree");
  for (int s = 0; s < nsamples; ++s) {
    std::map<Var, Rational> at;
    for (Var v : {lam(1), lam(2), nu(1)}) at[v] = random_rational(rng);
    for (Var v : {muR(1), muR(2), muL(1), muL(2)}) at[v] = positive_rational(rng);
    std::map<Var, Poly> atp;
    for (auto& [v, q] : at) atp[v] = Poly(q);

    // maps per target summand, source vector(s), target Whittaker vectors per summand
    std::vector<IntertwinerMap> maps;
    std::vector<Weight> tw;
    SpaceKind kind = SpaceKind::verma;
    VarKind deg_kind = VarKind::pbw;
    bool split = false;
    Poly src;
    std::vector<Poly> targets;
    const std::string& id = img.id;
    if (id.rfind("SL2", 0) == 0) {
      Rational l = at[lam(1)], mu = at[muR(1)], m = at[muL(1)];
      Weight W{Poly(l)};
      if (id == "SL2_PHI_PLUS" || id == "SL2_PHI_MINUS") {
        Rational ls = id == "SL2_PHI_PLUS" ? Rational(l + 1) : Rational(l - 1);
        maps.push_back(build_map(id, W));
        src = verma_whittaker(ls, mu, D, 0);
        tw.push_back(W);
        targets.push_back(verma_whittaker(l, mu, D, 0));
      } else if (id == "SL2_PHI_INV") {
        split = true;
        maps.push_back(build_map("SL2_PHI_PLUS_INV", W));
        maps.push_back(build_map("SL2_PHI_MINUS_INV", W));
        src = verma_whittaker(l, mu, D, 0);
        tw = {Weight{Poly(Rational(l + 1))}, Weight{Poly(Rational(l - 1))}};
        targets = {verma_whittaker(l + 1, mu, D, 0), verma_whittaker(l - 1, mu, D, 0)};
      } else if (id == "SL2_PHI_DUAL") {
        split = true;
        kind = SpaceKind::dual_verma;
        maps.push_back(build_map("SL2_PHI_PLUS_INV_DUAL", W));
        maps.push_back(build_map("SL2_PHI_MINUS_INV_DUAL", W));
        src = verma_whittaker(l, m, D, 2);
        tw = {Weight{Poly(Rational(l + 1))}, Weight{Poly(Rational(l - 1))}};
        targets = {verma_whittaker(l + 1, m, D, 2), verma_whittaker(l - 1, m, D, 2)};
      } else if (id == "SL2_CG_K") {
        kind = SpaceKind::bw;
        deg_kind = VarKind::x;
        Rational nv = at[nu(1)], m1 = at[muR(1)], m2 = at[muR(2)];
        maps.push_back(build_map("SL2_CG_K", W, Weight{Poly(nv)}, img.k));
        WhittakerSpec a, b, c;
        a.n = b.n = c.n = 2;
        a.lambda = W;
        a.mu_right = {Poly(m1)};
        b.lambda = {Poly(nv)};
        b.mu_right = {Poly(m2)};
        c.lambda = {Poly(l + nv - 2 * img.k)};
        c.mu_right = {Poly(m1 + m2)};
        Poly wy = whittaker_vector(b, D).poly.substitute(cellx(1, 2), Poly::var(celly(1, 2)));
        src = whittaker_vector(a, D).poly * wy;
        // keep total degree <= D
        Poly t;
        for (auto& [mo, q] : src.terms())
          if (mo.degree() <= D) t.add_term(mo, q);
        src = t;
        tw.push_back(c.lambda);
        targets.push_back(whittaker_vector(c, D).poly);
      }
    } else {
      kind = SpaceKind::bw;
      deg_kind = VarKind::x;
      Weight W{Poly(at[lam(1)]), Poly(at[lam(2)])};
      Weight Wp = shift(W, {1, 0});
      WhittakerSpec a, b;
      a.n = b.n = 3;
      a.lambda = W;
      b.lambda = Wp;
      a.mu_right = b.mu_right = {Poly(at[muR(1)]), Poly(at[muR(2)])};
      if (id == "SL3_PHI_PLUS") {
        split = true;
        maps.push_back(build_map("SL3_PHI_PLUS", W));
        src = whittaker_vector(a, D).poly;
        tw.push_back(Wp);
        targets.push_back(whittaker_vector(b, D).poly);
      } else {
        maps.push_back(build_map("SL3_PHI_PLUS_INV", W));
        src = whittaker_vector(b, D).poly;
        tw.push_back(W);
        targets.push_back(whittaker_vector(a, D).poly);
      }
    }

    auto fail = [&](const std::string& what, const Poly& lhs, const Poly& rhs) {
      rep.pass = false;
      rep.failure = img.id + " sample " + std::to_string(s) + " " + what + ": direct " + lhs.str() + " vs operator " +
                    rhs.str();
    };
    auto expected = [&](int fin, int module) {
      Poly e;
      for (auto& t : img.terms)
        if (t.fin == fin && t.module == module)
          e += apply_op(kind, tw[module], t.op.substitute(atp), targets[module]) * Poly(t.pref.evaluate(at));
      return e.truncate(deg_kind, cut);
    };
    if (!split) {
      const auto& M = maps[0];
      ModVec img_v = apply_map_raw(M, ModVec{src});
      Rational pf = M.prefactor.evaluate({});
      for (size_t j = 0; j < img_v.size(); ++j) {
        Poly lhs = (img_v[j] * pf).truncate(deg_kind, cut);
        Poly rhs = expected(static_cast<int>(j), 0);
        if (lhs != rhs) {
          fail("component " + std::to_string(j), lhs, rhs);
          return rep;
        }
      }
    } else {
      int ncomp = maps[0].source.components();
      for (int j = 0; j < ncomp; ++j) {
        ModVec v(ncomp);
        v[j] = src;
        for (size_t t = 0; t < maps.size(); ++t) {
          ModVec out = apply_map_raw(maps[t], v);
          Poly lhs = (out[0] * maps[t].prefactor.evaluate({})).truncate(deg_kind, cut);
          Poly rhs = expected(j, static_cast<int>(t));
          if (lhs != rhs) {
            fail("component " + std::to_string(j) + " summand " + std::to_string(t), lhs, rhs);
            return rep;
          }
        }
      }
    }
    ++rep.samples;
  }
  return rep;
}

}  // namespace toda
