#include "toda/evaluator.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace toda {

Jet2::Jet2(int order_, double constant) : order(order_) {
  if (order < 0 || order > kMaxOrder) throw std::invalid_argument("derivative order must be in [0,4]");
  c[0][0] = constant;
}

Jet2 Jet2::linear(int order, double x0, double s1, double s2) {
  Jet2 j(order, x0);
  if (order >= 1) {
    j.c[1][0] = s1;
    j.c[0][1] = s2;
  }
  return j;
}

double Jet2::derivative(int a, int b) const {
  if (a < 0 || b < 0 || a + b > order) throw std::out_of_range("jet derivative beyond truncation order");
  return c[a][b] * std::tgamma(a + 1) * std::tgamma(b + 1);
}

Jet2 Jet2::operator+(const Jet2& o) const {
  Jet2 r(std::min(order, o.order));
  for (int a = 0; a <= r.order; ++a)
    for (int b = 0; a + b <= r.order; ++b) r.c[a][b] = c[a][b] + o.c[a][b];
  return r;
}

Jet2 Jet2::operator*(const Jet2& o) const {
  Jet2 r(std::min(order, o.order));
  int K = r.order;
  for (int a = 0; a <= K; ++a)
    for (int b = 0; a + b <= K; ++b) {
      if (c[a][b] == 0) continue;
      for (int a2 = 0; a + a2 <= K; ++a2)
        for (int b2 = 0; a + a2 + b + b2 <= K; ++b2) r.c[a + a2][b + b2] += c[a][b] * o.c[a2][b2];
    }
  return r;
}

Jet2 Jet2::operator*(double s) const {
  Jet2 r = *this;
  for (auto& row : r.c)
    for (auto& x : row) x *= s;
  return r;
}

Jet2 jet_exp(const Jet2& x) {
  Jet2 u = x;
  double e0 = std::exp(x.c[0][0]);
  u.c[0][0] = 0;
  Jet2 sum(x.order, 1.0), pw(x.order, 1.0);
  for (int k = 1; k <= x.order; ++k) {
    pw = pw * u * (1.0 / k);
    sum = sum + pw;
  }
  return sum * e0;
}

namespace {

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::runtime_error(std::string(what) + ": non-finite result");
}

EvalResult from_jet(const EvalJet& j) {
  EvalResult r;
  r.value = j.d(0, 0);
  r.est_error = j.est_error * std::fabs(r.value);
  r.method = j.method;
  r.phi = j.phi;
  r.converged = j.converged;
  return r;
}

// G(c0 e^{l(d)}) as a jet, given G^{(k)}(c0) for k = 0..order; l is linear with slopes s1, s2
Jet2 compose_scaled(const std::vector<double>& dG, double c0, double s1, double s2, int order) {
  Jet2 w = jet_exp(Jet2::linear(order, 0, s1, s2));
  w.c[0][0] -= 1;
  w = w * c0;
  Jet2 out(order, 0), pw(order, 1.0);
  for (int k = 0; k <= order; ++k) {
    out = out + pw * dG[k];
    pw = pw * w * (1.0 / (k + 1));
  }
  return out;
}

double max_abs(const Jet2& j) {
  double m = 0;
  for (int a = 0; a <= j.order; ++a)
    for (int b = 0; a + b <= j.order; ++b) m = std::max(m, std::fabs(j.derivative(a, b)));
  return m;
}

}  // namespace

EvalJet series_sl2_jet(double lambda, double mu_prod, double phi, int order) {
  if (!std::isfinite(lambda) || !std::isfinite(mu_prod) || !std::isfinite(phi))
    throw std::invalid_argument("eval_series_sl2: non-finite argument");
  if (mu_prod != 0 && lambda >= 0 && lambda == std::floor(lambda))
    throw std::domain_error("eval_series_sl2: integer lambda is a pole of the series");
  double z = mu_prod * std::exp(-2 * phi);
  double e = std::exp(lambda * phi);
  // term_i = e z^i/(i! (lambda,i)); d^k/dphi^k multiplies by (lambda-2i)^k
  std::vector<std::vector<double>> parts(order + 1);
  std::vector<double> abs_sum(order + 1, 0.0);
  double t = e;
  for (int i = 0;; ++i) {
    double fac = 1;
    for (int k = 0; k <= order; ++k) {
      parts[k].push_back(t * fac);
      abs_sum[k] += std::fabs(t * fac);
      fac *= lambda - 2 * i;
    }
    if (i > 2 && i > std::fabs(lambda) + std::sqrt(std::fabs(z))) {
      bool done = true;
      for (int k = 0; k <= order; ++k) {
        double s = pairwise_sum(parts[k]);
        if (!(std::fabs(parts[k].back()) < 1e-16 * std::fabs(s)) && parts[k].back() != 0) done = false;
      }
      if (done || t == 0) break;
    }
    if (i > 100000) throw std::runtime_error("eval_series_sl2: no convergence");
    t = t * z / ((i + 1) * (lambda - i));
  }
  EvalJet r;
  r.jet = Jet2(order);
  double rel = 0;
  for (int k = 0; k <= order; ++k) {
    double s = pairwise_sum(parts[k]);
    check_finite(s, "eval_series_sl2");
    r.jet.c[k][0] = s / std::tgamma(k + 1);
    double err = 4 * std::numeric_limits<double>::epsilon() * abs_sum[k];
    rel = std::max(rel, err);
  }
  double mag = max_abs(r.jet);
  r.est_error = mag > 0 ? rel / mag : rel;
  r.method = "series";
  r.phi = {phi};
  return r;
}

EvalResult eval_series_sl2(double lambda, double mu_prod, double phi) {
  return from_jet(series_sl2_jet(lambda, mu_prod, phi, 0));
}

EvalJet integral_sl2_jet(const NumericSpec& spec, double phi, int order, const QuadratureSpec& q,
                         Sl2Convention conv) {
  spec.validate();
  if (spec.n != 2) throw std::invalid_argument("eval_integral_sl2: n must be 2");
  double l = spec.lambda[0], mL = spec.mu_left[0], mR = spec.mu_right[0];
  if (!(mL > 0) || !(mR > 0)) throw std::invalid_argument("eval_integral_sl2: mu_L and mu_R must be positive");
  double a = mL * mR;
  double B = a * std::exp(-2 * phi);
  std::vector<int> offs;
  for (int j = 0; j <= order; ++j) offs.push_back(-j);
  auto m = power_exp_moments(-(l + 2), B, 1.0, offs, q);
  std::vector<double> dG(order + 1);
  double rel = 0;
  bool conv_ok = true;
  for (int j = 0; j <= order; ++j) {
    dG[j] = (j % 2 ? -1 : 1) * m[j].value;
    rel = std::max(rel, m[j].est_error / std::fabs(m[j].value));
    conv_ok = conv_ok && m[j].converged;
  }
  Jet2 g = compose_scaled(dG, B, -2, 0, order);
  double C, rate;
  if (conv == Sl2Convention::whittaker) {
    if (l + 1 <= 0 && l + 1 == std::floor(l + 1))
      throw std::domain_error("eval_integral_sl2: 1/Gamma(lambda+1) vanishes");
    C = std::pow(a, l + 1) / std::tgamma(l + 1);
    rate = -(l + 2);
  } else {
    C = std::pow(mR, l + 1);
    rate = 0;
  }
  EvalJet r;
  r.jet = g * jet_exp(Jet2::linear(order, rate * phi, rate, 0)) * C;
  for (int k = 0; k <= order; ++k) check_finite(r.jet.c[k][0], "eval_integral_sl2");
  r.est_error = rel + 8 * std::numeric_limits<double>::epsilon();
  r.converged = conv_ok;
  r.method = conv == Sl2Convention::whittaker ? "de-quadrature" : "de-quadrature/printed";
  r.phi = {phi};
  return r;
}

EvalResult eval_integral_sl2(const NumericSpec& spec, double phi, const QuadratureSpec& q, Sl2Convention conv) {
  return from_jet(integral_sl2_jet(spec, phi, 0, q, conv));
}

EvalResult macdonald_K(double nu, double z, const QuadratureSpec& q) {
  if (!(z > 0) || !std::isfinite(z) || !std::isfinite(nu)) throw std::invalid_argument("macdonald_K: need z > 0");
  auto m = power_exp_moments(nu - 1, z / 2, z / 2, {0}, q);
  EvalResult r;
  r.value = m[0].value / 2;
  r.est_error = m[0].est_error / 2 + 4 * std::numeric_limits<double>::epsilon() * std::fabs(r.value);
  r.converged = m[0].converged;
  r.method = "de-quadrature";
  r.phi = {};
  check_finite(r.value, "macdonald_K");
  return r;
}

namespace {

void check_sl3(const NumericSpec& spec) {
  spec.validate();
  if (spec.n != 3) throw std::invalid_argument("eval_integral_sl3: n must be 3");
  for (int i = 0; i < 2; ++i)
    if (!(spec.mu_left[i] > 0) || !(spec.mu_right[i] > 0))
      throw std::invalid_argument("eval_integral_sl3: all mu must be positive");
}

}  // namespace

double sl3_normalization(const NumericSpec& spec) {
  double l1 = spec.lambda[0], l2 = spec.lambda[1], s = l1 + l2;
  double m1 = spec.mu_left[0], m2 = spec.mu_left[1];
  double g = std::tgamma(s + 2);
  double beta = std::tgamma(l1 + 1) * std::tgamma(l2 + 1) / g;
  double N = g * g * std::pow(m1 * m2, -(s + 2)) * beta;
  if (!std::isfinite(N) || N == 0) throw std::domain_error("eval_integral_sl3: degenerate normalization");
  return N;
}

EvalJet integral_sl3_jet(const NumericSpec& spec, double phi1, double phi2, int order, const QuadratureSpec& q) {
  check_sl3(spec);
  double l1 = spec.lambda[0], l2 = spec.lambda[1], s = l1 + l2;
  double m1 = spec.mu_left[0], m2 = spec.mu_left[1];
  double c1 = spec.mu_right[0] * std::exp(phi2 - 2 * phi1);
  double c2 = spec.mu_right[1] * std::exp(phi1 - 2 * phi2);
  double N = sl3_normalization(spec);
  std::vector<int> offs;
  for (int j = 0; j <= order; ++j) offs.push_back(j);
  QuadratureSpec inner{std::min(q.rel_tol, 1e-13), 12};
  const int K = order;
  // flatten jets: index over (a,b) with a+b <= K
  std::vector<std::pair<int, int>> idx;
  for (int a = 0; a <= K; ++a)
    for (int b = 0; a + b <= K; ++b) idx.push_back({a, b});
  auto integrand = [&](double u, double v) {
    std::vector<double> out(idx.size(), 0.0);
    if (u < 1e-300 || v < 1e-300) return out;
    auto M1 = power_exp_moments(-(s + 3), m1 / v, c1, offs, inner);
    auto M2 = power_exp_moments(-(s + 3), m2 / u, c2, offs, inner);
    double L = -(l1 + 2) * std::log(u) - (l2 + 2) * std::log(v) + M1[0].log_scale + M2[0].log_scale;
    double f = std::exp(L);
    if (f == 0) return out;
    std::vector<double> d1(K + 1), d2(K + 1);
    for (int j = 0; j <= K; ++j) {
      double sg = j % 2 ? -1 : 1;
      d1[j] = sg * M1[j].scaled * std::exp(M1[j].log_scale - M1[0].log_scale);
      d2[j] = sg * M2[j].scaled * std::exp(M2[j].log_scale - M2[0].log_scale);
    }
    Jet2 g = compose_scaled(d1, c1, -2, 1, K) * compose_scaled(d2, c2, 1, -2, K) * f;
    for (size_t i = 0; i < idx.size(); ++i) out[i] = g.c[idx[i].first][idx[i].second];
    return out;
  };
  auto res = tanh_sinh_unit(integrand, idx.size(), q);
  Jet2 I(K);
  for (size_t i = 0; i < idx.size(); ++i) I.c[idx[i].first][idx[i].second] = res.value[i];
  EvalJet r;
  r.jet = I * jet_exp(Jet2::linear(K, l1 * phi1 + l2 * phi2, l1, l2)) * (1.0 / N);
  for (size_t i = 0; i < idx.size(); ++i) check_finite(r.jet.c[idx[i].first][idx[i].second], "eval_integral_sl3");
  r.est_error = res.est_error + 1e-12;
  r.converged = res.converged;
  r.method = "tanh-sinh(u) x de-quadrature(x1,x2)";
  r.phi = {phi1, phi2};
  return r;
}

EvalResult eval_integral_sl3(const NumericSpec& spec, double phi1, double phi2, const QuadratureSpec& q) {
  return from_jet(integral_sl3_jet(spec, phi1, phi2, 0, q));
}

double integral_sl3_bessel(const NumericSpec& spec, double phi1, double phi2) {
  check_sl3(spec);
  double l1 = spec.lambda[0], l2 = spec.lambda[1], s = l1 + l2;
  double m1 = spec.mu_left[0], m2 = spec.mu_left[1];
  double c1 = spec.mu_right[0] * std::exp(phi2 - 2 * phi1);
  double c2 = spec.mu_right[1] * std::exp(phi1 - 2 * phi2);
  // int_0^inf x^{-(s+3)} e^{-b/x - c x} dx = 2 (b/c)^{-(s+2)/2} K_{s+2}(2 sqrt(bc))
  auto kint = [&](double b, double c) {
    if (2 * std::sqrt(b * c) > 700) return 0.0;
    return 2 * std::pow(b / c, -(s + 2) / 2) * std::cyl_bessel_k(std::fabs(s + 2), 2 * std::sqrt(b * c));
  };
  auto f = [&](double u, double v) {
    if (u < 1e-300 || v < 1e-300) return std::vector<double>{0.0};
    double val = std::pow(u, -(l1 + 2)) * std::pow(v, -(l2 + 2)) * kint(m1 / v, c1) * kint(m2 / u, c2);
    if (!std::isfinite(val)) val = 0;
    return std::vector<double>{val};
  };
  auto res = tanh_sinh_unit(f, 1, QuadratureSpec{1e-12, 10});
  return res.value[0] * std::exp(l1 * phi1 + l2 * phi2) / sl3_normalization(spec);
}

EvalJet eval_jet(const EvalTarget& t, const std::vector<double>& phi, int order) {
  switch (t.kind) {
    case EvalTarget::Kind::series_sl2:
      if (phi.size() != 1 || t.spec.lambda.size() != 1) throw std::invalid_argument("series: one phi, one lambda");
      return series_sl2_jet(t.spec.lambda[0], t.mu_prod, phi[0], order);
    case EvalTarget::Kind::integral_sl2:
      if (phi.size() != 1) throw std::invalid_argument("integral_sl2: one phi");
      return integral_sl2_jet(t.spec, phi[0], order, t.q, t.conv);
    case EvalTarget::Kind::integral_sl3:
      if (phi.size() != 2) throw std::invalid_argument("integral_sl3: two phi");
      return integral_sl3_jet(t.spec, phi[0], phi[1], order, t.q);
  }
  throw std::logic_error("eval_jet: unknown target");
}

EvalResult eval_derivative(const EvalTarget& t, const std::vector<double>& phi, const std::vector<int>& alpha) {
  int a = alpha.size() > 0 ? alpha[0] : 0, b = alpha.size() > 1 ? alpha[1] : 0;
  if (alpha.size() > phi.size()) throw std::invalid_argument("eval_derivative: multi-index longer than phi");
  if (a < 0 || b < 0 || a + b > Jet2::kMaxOrder) throw std::invalid_argument("derivative order must be in [0,4]");
  EvalJet j = eval_jet(t, phi, a + b);
  EvalResult r;
  r.value = j.d(a, b);
  r.est_error = j.est_error * max_abs(j.jet);
  r.method = j.method;
  r.phi = phi;
  r.converged = j.converged;
  return r;
}

}  // namespace toda
