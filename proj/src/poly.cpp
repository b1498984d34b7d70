#include "toda/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace toda {

std::string var_name(Var v) {
  int i = var_index(v);
  switch (var_kind(v)) {
    case VarKind::lambda: return "l" + std::to_string(i);
    case VarKind::nu: return "n" + std::to_string(i);
    case VarKind::muL: return "mL" + std::to_string(i);
    case VarKind::muR: return "mR" + std::to_string(i);
    case VarKind::x: return "x" + std::to_string(i / 16) + std::to_string(i % 16);
    case VarKind::y: return "y" + std::to_string(i / 16) + std::to_string(i % 16);
    case VarKind::aux: return "c" + std::to_string(i);
    case VarKind::phi: return "p" + std::to_string(i);
    case VarKind::pbw: return "F" + std::to_string(i);
  }
  return "?";
}

std::string rational_str(const Rational& q) { return q.get_str(); }

namespace {

void monomials_rec(const std::vector<Var>& vars, size_t at, int budget, const Monomial& cur, std::vector<Monomial>& out) {
  if (at == vars.size()) {
    out.push_back(cur);
    return;
  }
  for (int e = 0; e <= budget; ++e) {
    Monomial m = cur;
    if (e > 0) m.f.push_back({vars[at], static_cast<std::uint16_t>(e)});
    monomials_rec(vars, at + 1, budget - e, m, out);
  }
}

}  // namespace

std::vector<Monomial> monomials_upto(const std::vector<Var>& vars, int d) {
  std::vector<Monomial> out;
  monomials_rec(vars, 0, d, Monomial{}, out);
  return out;
}

int Monomial::degree() const {
  int d = 0;
  for (auto& [v, e] : f) d += e;
  return d;
}

int Monomial::degree_in(VarKind k) const {
  int d = 0;
  for (auto& [v, e] : f)
    if (var_kind(v) == k) d += e;
  return d;
}

int Monomial::exponent(Var v) const {
  for (auto& [w, e] : f)
    if (w == v) return e;
  return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.f.reserve(f.size() + o.f.size());
  size_t i = 0, j = 0;
  while (i < f.size() || j < o.f.size()) {
    if (j == o.f.size() || (i < f.size() && f[i].first < o.f[j].first)) {
      r.f.push_back(f[i++]);
    } else if (i == f.size() || o.f[j].first < f[i].first) {
      r.f.push_back(o.f[j++]);
    } else {
      r.f.push_back({f[i].first, static_cast<std::uint16_t>(f[i].second + o.f[j].second)});
      ++i;
      ++j;
    }
  }
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  for (auto& [v, e] : f)
    if (o.exponent(v) < e) return false;
  return true;
}

Monomial Monomial::quotient(const Monomial& o) const {
  Monomial r;
  for (auto& [v, e] : f) {
    int d = e - o.exponent(v);
    if (d < 0) throw std::logic_error("monomial quotient: not divisible");
    if (d > 0) r.f.push_back({v, static_cast<std::uint16_t>(d)});
  }
  return r;
}

bool operator<(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  // lex on exponent vectors, smallest variable most significant
  size_t i = 0, j = 0;
  while (i < a.f.size() || j < b.f.size()) {
    if (i == a.f.size()) return true;
    if (j == b.f.size()) return false;
    if (a.f[i].first != b.f[j].first) return a.f[i].first > b.f[j].first;
    if (a.f[i].second != b.f[j].second) return a.f[i].second < b.f[j].second;
    ++i;
    ++j;
  }
  return false;
}

Poly::Poly(const Rational& c) {
  if (c != 0) t_.emplace(Monomial{}, c);
}

Poly Poly::var(Var v, int power) {
  Poly p;
  Monomial m;
  if (power > 0) m.f.push_back({v, static_cast<std::uint16_t>(power)});
  p.t_.emplace(m, Rational(1));
  return p;
}

bool Poly::is_constant() const {
  return t_.empty() || (t_.size() == 1 && t_.begin()->first.f.empty());
}

Rational Poly::constant_term() const {
  auto it = t_.find(Monomial{});
  return it == t_.end() ? Rational(0) : it->second;
}

int Poly::degree() const {
  int d = -1;
  for (auto& [m, c] : t_) d = std::max(d, m.degree());
  return d;
}

int Poly::degree_in(VarKind k) const {
  int d = -1;
  for (auto& [m, c] : t_) d = std::max(d, m.degree_in(k));
  return d;
}

int Poly::degree_in_var(Var v) const {
  int d = -1;
  for (auto& [m, c] : t_) d = std::max(d, m.exponent(v));
  return d;
}

std::vector<Var> Poly::variables() const {
  std::vector<Var> vs;
  for (auto& [m, c] : t_)
    for (auto& [v, e] : m.f) vs.push_back(v);
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = t_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (auto& [m, c] : o.t_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (auto& [m, c] : o.t_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  if (a.is_zero() || b.is_zero()) return r;
  for (auto& [ma, ca] : a.t_)
    for (auto& [mb, cb] : b.t_) r.add_term(ma * mb, ca * cb);
  return r;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    t_.clear();
    return *this;
  }
  for (auto& [m, v] : t_) v *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, v] : r.t_) v = -v;
  return r;
}

Poly Poly::pow(int k) const {
  Poly r(1), b = *this;
  while (k > 0) {
    if (k & 1) r *= b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

Poly Poly::derivative(Var v) const {
  Poly r;
  for (auto& [m, c] : t_) {
    int e = m.exponent(v);
    if (e == 0) continue;
    Monomial q;
    for (auto& [w, k] : m.f) {
      if (w != v)
        q.f.push_back({w, k});
      else if (k > 1)
        q.f.push_back({w, static_cast<std::uint16_t>(k - 1)});
    }
    r.add_term(q, c * e);
  }
  return r;
}

Poly Poly::substitute(Var v, const Poly& value) const {
  std::map<Var, Poly> m{{v, value}};
  return substitute(m);
}

Poly Poly::substitute(const std::map<Var, Poly>& values) const {
  Poly r;
  std::map<std::pair<Var, int>, Poly> powers;
  for (auto& [m, c] : t_) {
    Poly term(c);
    Monomial rest;
    for (auto& [v, e] : m.f) {
      auto it = values.find(v);
      if (it == values.end()) {
        rest.f.push_back({v, e});
        continue;
      }
      auto key = std::make_pair(v, static_cast<int>(e));
      auto pit = powers.find(key);
      if (pit == powers.end()) pit = powers.emplace(key, it->second.pow(e)).first;
      term *= pit->second;
    }
    if (!rest.f.empty()) {
      Poly rp;
      rp.add_term(rest, Rational(1));
      term *= rp;
    }
    r += term;
  }
  return r;
}

Poly Poly::evaluate(const std::map<Var, Rational>& values) const {
  std::map<Var, Poly> m;
  for (auto& [v, q] : values) m.emplace(v, Poly(q));
  return substitute(m);
}

double Poly::evaluate_double(const std::map<Var, double>& values) const {
  double s = 0;
  for (auto& [m, c] : t_) {
    double t = c.get_d();
    for (auto& [v, e] : m.f) {
      auto it = values.find(v);
      if (it == values.end()) throw std::invalid_argument("evaluate_double: unbound " + var_name(v));
      t *= std::pow(it->second, e);
    }
    s += t;
  }
  return s;
}

Poly Poly::truncate(VarKind k, int d) const {
  Poly r;
  for (auto& [m, c] : t_)
    if (m.degree_in(k) <= d) r.t_.emplace(m, c);
  return r;
}

Poly Poly::homogeneous_part(VarKind k, int d) const {
  Poly r;
  for (auto& [m, c] : t_)
    if (m.degree_in(k) == d) r.t_.emplace(m, c);
  return r;
}

std::map<Monomial, Poly> Poly::split(VarKind k) const {
  std::map<Monomial, Poly> out;
  for (auto& [m, c] : t_) {
    Monomial a, b;
    for (auto& ve : m.f) (var_kind(ve.first) == k ? a : b).f.push_back(ve);
    out[a].add_term(b, c);
  }
  return out;
}

const Monomial* Poly::leading_monomial() const {
  if (t_.empty()) return nullptr;
  return &t_.rbegin()->first;
}

std::string Poly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = (a == 1);
    if (!unit || m.f.empty()) os << a.get_str();
    bool star = !unit || m.f.empty();
    for (auto& [v, e] : m.f) {
      if (star) os << "*";
      os << var_name(v);
      if (e > 1) os << "^" << e;
      star = true;
    }
  }
  return os.str();
}

bool divides(const Poly& b, const Poly& a, Poly* quotient) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  Poly rem = a, q;
  const Monomial lb = *b.leading_monomial();
  const Rational cb = b.terms().rbegin()->second;
  while (!rem.is_zero()) {
    const Monomial lr = *rem.leading_monomial();
    if (!lb.divides(lr)) return false;
    Monomial qm = lr.quotient(lb);
    Rational qc = rem.terms().rbegin()->second / cb;
    Poly t;
    t.add_term(qm, qc);
    q += t;
    rem -= t * b;
  }
  if (quotient) *quotient = q;
  return true;
}

Poly divide_exact(const Poly& a, const Poly& b) {
  Poly q;
  if (!divides(b, a, &q)) throw std::logic_error("divide_exact: not divisible: (" + a.str() + ")/(" + b.str() + ")");
  return q;
}

Poly falling(const Poly& x, int k) {
  Poly r(1);
  for (int i = 0; i < k; ++i) r *= (x - Poly(i));
  return r;
}

RatFunc::RatFunc(const Poly& n, const Poly& d) : num_(n), den_(d) {
  if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (!den_.is_constant()) {
    Poly q;
    if (divides(den_, num_, &q)) {
      num_ = q;
      den_ = Poly(1);
    }
  }
  // leading coefficient of the denominator made 1
  Rational lc = den_.terms().rbegin()->second;
  if (lc != 1) {
    num_ *= Rational(1) / lc;
    den_ *= Rational(1) / lc;
  }
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else if (o.den_.is_constant()) {
    num_ += o.num_ * den_;
  } else if (den_.is_constant()) {
    num_ = num_ * o.den_ + o.num_;
    den_ = o.den_;
  } else {
    Poly q;
    if (divides(den_, o.den_, &q)) {
      num_ = num_ * q + o.num_;
      den_ = o.den_;
    } else if (divides(o.den_, den_, &q)) {
      num_ += o.num_ * q;
    } else {
      num_ = num_ * o.den_ + o.num_ * den_;
      den_ *= o.den_;
    }
  }
  normalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
  if (o.num_.is_zero()) throw std::domain_error("RatFunc: division by zero");
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

bool RatFunc::equals(const RatFunc& o) const { return num_ * o.den_ == o.num_ * den_; }

RatFunc RatFunc::substitute(const std::map<Var, Poly>& values) const {
  return RatFunc(num_.substitute(values), den_.substitute(values));
}

Rational RatFunc::evaluate(const std::map<Var, Rational>& values) const {
  Poly n = num_.evaluate(values), d = den_.evaluate(values);
  if (!n.is_constant() || !d.is_constant()) throw std::invalid_argument("RatFunc::evaluate: unbound variables");
  if (d.constant_term() == 0) throw std::domain_error("RatFunc::evaluate: denominator vanishes");
  return n.constant_term() / d.constant_term();
}

double RatFunc::evaluate_double(const std::map<Var, double>& values) const {
  return num_.evaluate_double(values) / den_.evaluate_double(values);
}

std::string RatFunc::str() const {
  if (den_ == Poly(1)) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace toda
