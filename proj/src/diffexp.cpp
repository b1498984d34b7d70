#include "toda/diffexp.hpp"

#include <stdexcept>

namespace toda {

DiffExpOp::DiffExpOp(int nvars) : nv_(nvars) {}

DiffExpOp DiffExpOp::scalar(int nvars, const RatFunc& c) {
  DiffExpOp o(nvars);
  o.add_term(std::vector<int>(nvars, 0), std::vector<int>(nvars, 0), c);
  return o;
}

DiffExpOp DiffExpOp::exp(int nvars, const std::vector<int>& k) {
  DiffExpOp o(nvars);
  o.add_term(k, std::vector<int>(nvars, 0), RatFunc(1));
  return o;
}

DiffExpOp DiffExpOp::d(int nvars, int var) {
  DiffExpOp o(nvars);
  std::vector<int> a(nvars, 0);
  a.at(var) = 1;
  o.add_term(std::vector<int>(nvars, 0), a, RatFunc(1));
  return o;
}

void DiffExpOp::add_term(const std::vector<int>& k, const std::vector<int>& a, const RatFunc& c) {
  if (static_cast<int>(k.size()) != nv_ || static_cast<int>(a.size()) != nv_)
    throw std::invalid_argument("DiffExpOp: index length mismatch");
  if (c.is_zero()) return;
  Key key{k, a};
  auto it = t_.find(key);
  if (it == t_.end()) {
    t_.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

int DiffExpOp::max_order() const {
  int m = 0;
  for (auto& [key, c] : t_) {
    int s = 0;
    for (int x : key.a) s += x;
    m = std::max(m, s);
  }
  return m;
}

DiffExpOp& DiffExpOp::operator+=(const DiffExpOp& o) {
  if (o.nv_ != nv_) throw std::invalid_argument("DiffExpOp: variable count mismatch");
  for (auto& [key, c] : o.t_) add_term(key.k, key.a, c);
  return *this;
}

DiffExpOp& DiffExpOp::operator-=(const DiffExpOp& o) {
  if (o.nv_ != nv_) throw std::invalid_argument("DiffExpOp: variable count mismatch");
  for (auto& [key, c] : o.t_) add_term(key.k, key.a, -c);
  return *this;
}

DiffExpOp& DiffExpOp::operator*=(const RatFunc& c) {
  if (c.is_zero()) {
    t_.clear();
    return *this;
  }
  for (auto& [key, v] : t_) v *= c;
  return *this;
}

namespace {

long binom(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

DiffExpOp operator*(const DiffExpOp& a, const DiffExpOp& b) {
  if (a.nv_ != b.nv_) throw std::invalid_argument("DiffExpOp: variable count mismatch");
  const int nv = a.nv_;
  DiffExpOp out(nv);
  for (auto& [ka, ca] : a.t_)
    for (auto& [kb, cb] : b.t_) {
      // d^{a1} e^{k2} = e^{k2} sum_b C(a1,b) k2^{a1-b} d^b
      std::vector<int> k(nv), bidx(nv, 0);
      for (int i = 0; i < nv; ++i) k[i] = ka.k[i] + kb.k[i];
      while (true) {
        Rational c = 1;
        std::vector<int> der(nv);
        for (int i = 0; i < nv; ++i) {
          int e = ka.a[i] - bidx[i];
          Rational p = 1;
          for (int t = 0; t < e; ++t) p *= kb.k[i];
          c *= p * binom(ka.a[i], bidx[i]);
          der[i] = bidx[i] + kb.a[i];
        }
        if (c != 0) out.add_term(k, der, ca * cb * RatFunc(c));
        int i = 0;
        while (i < nv && bidx[i] == ka.a[i]) bidx[i++] = 0;
        if (i == nv) break;
        ++bidx[i];
      }
    }
  return out;
}

DiffExpOp DiffExpOp::substitute(const std::map<Var, Poly>& values) const {
  DiffExpOp o(nv_);
  for (auto& [key, c] : t_) o.add_term(key.k, key.a, c.substitute(values));
  return o;
}

DiffExpOp DiffExpOp::embed(int nvars_total, const std::vector<int>& map) const {
  if (static_cast<int>(map.size()) != nv_) throw std::invalid_argument("DiffExpOp::embed: map size");
  DiffExpOp o(nvars_total);
  for (auto& [key, c] : t_) {
    std::vector<int> k(nvars_total, 0), a(nvars_total, 0);
    for (int i = 0; i < nv_; ++i) {
      k.at(map[i]) += key.k[i];
      a.at(map[i]) += key.a[i];
    }
    o.add_term(k, a, c);
  }
  return o;
}

std::string DiffExpOp::str(const std::vector<std::string>& names) const {
  if (t_.empty()) return "0";
  auto name = [&](int i) {
    return i < static_cast<int>(names.size()) ? names[i] : "phi" + std::to_string(i + 1);
  };
  std::string s;
  for (auto& [key, c] : t_) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")";
    std::string ex;
    for (int i = 0; i < nv_; ++i) {
      if (key.k[i] == 0) continue;
      if (!ex.empty()) ex += key.k[i] > 0 ? "+" : "";
      if (key.k[i] == -1)
        ex += "-";
      else if (key.k[i] != 1)
        ex += std::to_string(key.k[i]);
      ex += name(i);
    }
    if (!ex.empty()) s += " exp(" + ex + ")";
    for (int i = 0; i < nv_; ++i) {
      if (key.a[i] == 0) continue;
      s += " d_" + name(i);
      if (key.a[i] > 1) s += "^" + std::to_string(key.a[i]);
    }
  }
  return s;
}

EigenSymbols EigenSymbols::standard(int n, int offset) {
  EigenSymbols s;
  for (int i = 1; i < n; ++i) {
    s.m.push_back(Poly::var(muL(offset + i)));
    s.r.push_back(Poly::var(muR(offset + i)));
  }
  return s;
}

namespace {

// exp(phi.h) X = exp(wt(X)(phi)) X exp(phi.h); exponent vector of wt(X)
std::vector<int> mono_weight(const SlAlgebra& A, const Mono& m) {
  std::vector<int> w(A.rank, 0);
  for (size_t g = 0; g < m.size(); ++g)
    if (m[g])
      for (int k = 0; k < A.rank; ++k) w[k] += m[g] * A.h_eigen(k, static_cast<int>(g));
  return w;
}

DiffExpOp compile_right(const UEAElement& X, const EigenSymbols& s) {
  const SlAlgebra& A = SlAlgebra::get(X.n());
  const int nv = A.rank;
  DiffExpOp out(nv);
  for (auto& [mono, coeff] : X.terms()) {
    Poly c = coeff;
    std::vector<int> k(nv, 0), a(nv, 0);
    bool zero = false;
    for (size_t g = 0; g < mono.size() && !zero; ++g) {
      int e = mono[g];
      if (!e) continue;
      const Generator& gen = A.gens[g];
      int gi = static_cast<int>(g);
      if (gen.type == GenType::H) {
        a[gi - A.first_h()] += e;
      } else if (gen.type == GenType::F) {
        if (!A.is_simple_f(gi)) {
          zero = true;
          break;
        }
        c *= s.m.at(A.simple_index(gi)).pow(e);
        for (int q = 0; q < nv; ++q) k[q] += e * A.h_eigen(q, gi);
      } else {
        if (!A.is_simple_e(gi)) {
          zero = true;
          break;
        }
        c *= s.r.at(A.simple_index(gi)).pow(e);
      }
    }
    if (!zero) out.add_term(k, a, RatFunc(c));
  }
  return out;
}

}  // namespace

DiffExpOp compile_pair(const UEAElement& Q, const UEAElement& P, const EigenSymbols& s) {
  if (Q.n() != P.n()) throw std::invalid_argument("compile_pair: rank mismatch");
  const SlAlgebra& A = SlAlgebra::get(Q.n());
  const int nv = A.rank;
  DiffExpOp out(nv);
  for (auto& [mono, coeff] : Q.terms()) {
    UEAElement q(Q.n());
    q.add_term(mono, coeff);
    // Q_beta exp(phi.h) = exp(phi.h) exp(-beta(phi)) Q_beta
    std::vector<int> w = mono_weight(A, mono);
    for (int& x : w) x = -x;
    out += DiffExpOp::exp(nv, w) * compile_right(q * P, s);
  }
  return out;
}

DiffExpOp compile_matrix_element(const UEAElement& P, Side side, const EigenSymbols& s) {
  UEAElement one(P.n(), Poly(1));
  return side == Side::right ? compile_pair(one, P, s) : compile_pair(P, one, s);
}

std::vector<int> fin_weight(int n, int j) {
  const SlAlgebra& A = SlAlgebra::get(n);
  std::vector<int> w(A.rank);
  for (int k = 0; k < A.rank; ++k) {
    Rational d = A.matrix(A.h(k))[j * n + j];
    w[k] = static_cast<int>(d.get_num().get_si());
  }
  return w;
}

}  // namespace toda
