#include "toda/uea.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace toda {

namespace {

std::vector<std::vector<Rational>> invert(const std::vector<std::vector<int>>& A) {
  int r = static_cast<int>(A.size());
  std::vector<std::vector<Rational>> M(r, std::vector<Rational>(2 * r));
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) M[i][j] = A[i][j];
    M[i][r + i] = 1;
  }
  for (int c = 0; c < r; ++c) {
    int p = c;
    while (M[p][c] == 0) ++p;
    std::swap(M[p], M[c]);
    Rational inv = 1 / M[c][c];
    for (auto& x : M[c]) x *= inv;
    for (int i = 0; i < r; ++i) {
      if (i == c || M[i][c] == 0) continue;
      Rational f = M[i][c];
      for (int j = 0; j < 2 * r; ++j) M[i][j] -= f * M[c][j];
    }
  }
  std::vector<std::vector<Rational>> out(r, std::vector<Rational>(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) out[i][j] = M[i][r + j];
  return out;
}

}  // namespace

const CartanData& cartan(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<CartanData>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) {
    if (n < 2) throw std::invalid_argument("sl(n) needs n >= 2");
    auto c = std::make_unique<CartanData>();
    c->n = n;
    c->rank = n - 1;
    c->A.assign(n - 1, std::vector<int>(n - 1, 0));
    for (int i = 0; i < n - 1; ++i) {
      c->A[i][i] = 2;
      if (i > 0) c->A[i][i - 1] = -1;
      if (i + 1 < n - 1) c->A[i][i + 1] = -1;
    }
    c->Ainv = invert(c->A);
    c->rho.assign(n - 1, Rational(1));
    slot = std::move(c);
  }
  return *slot;
}

Weight symbolic_weight(int n, VarKind k) {
  Weight w;
  for (int i = 1; i < n; ++i) w.push_back(Poly::var(make_var(k, i)));
  return w;
}

Weight numeric_weight(const std::vector<Rational>& v) {
  Weight w;
  for (auto& q : v) w.push_back(Poly(q));
  return w;
}

Weight operator+(const Weight& a, const Weight& b) {
  if (a.size() != b.size()) throw std::invalid_argument("weight size mismatch");
  Weight r = a;
  for (size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

Weight shift(const Weight& a, const std::vector<int>& s) {
  if (a.size() != s.size()) throw std::invalid_argument("weight shift size mismatch");
  Weight r = a;
  for (size_t i = 0; i < a.size(); ++i) r[i] += Poly(s[i]);
  return r;
}

Poly weight_form(int n, const Weight& a, const Weight& b) {
  const auto& C = cartan(n);
  Poly s;
  for (int i = 0; i < C.rank; ++i)
    for (int j = 0; j < C.rank; ++j) s += C.Ainv[i][j] * (a[i] * b[j]);
  return s;
}

Poly casimir_scalar(int n, const Weight& lambda) {
  const auto& C = cartan(n);
  Weight rho = numeric_weight(C.rho);
  Weight lr = lambda + rho;
  return weight_form(n, lr, lr) - weight_form(n, rho, rho);
}

struct SlAlgebra::Cache {
  std::mutex mu;
  std::map<std::pair<Mono, int>, std::vector<std::pair<Mono, Rational>>> times;
};

SlAlgebra::SlAlgebra(int n_) : n(n_), rank(n_ - 1), cache_(new Cache) {
  // roots (i<j) sorted by height then i
  std::vector<std::pair<int, int>> roots;
  for (int ht = 1; ht < n; ++ht)
    for (int i = 0; i + ht < n; ++i) roots.push_back({i, i + ht});
  auto root_name = [](int i, int j) {
    std::string s;
    for (int k = i; k < j; ++k) s += std::to_string(k + 1);
    return s;
  };
  auto root_vec = [this](int i, int j) {
    std::vector<int> r(rank, 0);
    for (int k = i; k < j; ++k) r[k] = 1;
    return r;
  };
  for (auto [i, j] : roots) {
    auto r = root_vec(i, j);
    for (auto& x : r) x = -x;
    gens.push_back({GenType::F, i, j, "f" + root_name(i, j), r});
  }
  first_h_ = static_cast<int>(gens.size());
  for (int k = 0; k < rank; ++k) gens.push_back({GenType::H, k, k, "h" + std::to_string(k + 1), std::vector<int>(rank, 0)});
  first_e_ = static_cast<int>(gens.size());
  for (auto [i, j] : roots) gens.push_back({GenType::E, i, j, "e" + root_name(i, j), root_vec(i, j)});
  dim = static_cast<int>(gens.size());

  // structure constants from matrices
  std::vector<std::vector<Rational>> mats(dim);
  for (int g = 0; g < dim; ++g) mats[g] = matrix(g);
  bracket.assign(dim, std::vector<std::vector<std::pair<int, Rational>>>(dim));
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      std::vector<Rational> c(n * n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Rational s = 0;
          for (int k = 0; k < n; ++k) s += mats[a][i * n + k] * mats[b][k * n + j] - mats[b][i * n + k] * mats[a][k * n + j];
          c[i * n + j] = s;
        }
      auto& out = bracket[a][b];
      // diagonal part: sum c_k h_k with c_k = d_1 + ... + d_k
      Rational acc = 0;
      for (int k = 0; k < rank; ++k) {
        acc += c[k * n + k];
        if (acc != 0) out.push_back({h(k), acc});
      }
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i == j || c[i * n + j] == 0) continue;
          out.push_back({i < j ? e(i, j) : f(j, i), c[i * n + j]});
        }
      std::sort(out.begin(), out.end(), [](auto& x, auto& y) { return x.first < y.first; });
    }
  }
}

const SlAlgebra& SlAlgebra::get(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<SlAlgebra>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) {
    if (n < 2 || n > 9) throw std::invalid_argument("sl(n) supported for 2 <= n <= 9");
    slot.reset(new SlAlgebra(n));
  }
  return *slot;
}

int SlAlgebra::e(int i, int j) const {
  for (int g = first_e_; g < dim; ++g)
    if (gens[g].i == i && gens[g].j == j) return g;
  throw std::out_of_range("no such root vector");
}

int SlAlgebra::f(int i, int j) const {
  for (int g = 0; g < first_h_; ++g)
    if (gens[g].i == i && gens[g].j == j) return g;
  throw std::out_of_range("no such root vector");
}

bool SlAlgebra::is_simple_e(int g) const { return gens[g].type == GenType::E && gens[g].j == gens[g].i + 1; }
bool SlAlgebra::is_simple_f(int g) const { return gens[g].type == GenType::F && gens[g].j == gens[g].i + 1; }
int SlAlgebra::simple_index(int g) const { return (is_simple_e(g) || is_simple_f(g)) ? gens[g].i : -1; }

std::vector<Rational> SlAlgebra::matrix(int g) const {
  std::vector<Rational> m(n * n, Rational(0));
  const auto& G = gens[g];
  switch (G.type) {
    case GenType::E: m[G.i * n + G.j] = 1; break;
    case GenType::F: m[G.j * n + G.i] = 1; break;
    case GenType::H:
      m[G.i * n + G.i] = 1;
      m[(G.i + 1) * n + G.i + 1] = -1;
      break;
  }
  return m;
}

int SlAlgebra::h_eigen(int k, int g) const {
  const auto& G = gens[g];
  if (G.type == GenType::H) return 0;
  // [h_k, E_ij] = (d_ki - d_{k+1,i} - d_kj + d_{k+1,j}) E_ij
  int i = G.i, j = G.j;
  int v = (k == i) - (k + 1 == i) - (k == j) + (k + 1 == j);
  return G.type == GenType::E ? v : -v;
}

const std::vector<std::pair<Mono, Rational>>& SlAlgebra::times(const Mono& m, int g) const {
  auto key = std::make_pair(m, g);
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->times.find(key);
    if (it != cache_->times.end()) return it->second;
  }
  std::map<Mono, Rational> acc;
  int last = -1;
  for (int k = dim - 1; k >= 0; --k)
    if (m[k]) {
      last = k;
      break;
    }
  if (last <= g) {
    Mono r = m;
    r[g] += 1;
    acc[r] = 1;
  } else {
    Mono mp = m;
    mp[last] -= 1;
    // M' g last + M' [last, g]
    auto first = times(mp, g);
    for (auto& [t, c] : first)
      for (auto& [u, d] : times(t, last)) acc[u] += c * d;
    for (auto& [k, ck] : bracket[last][g])
      for (auto& [u, d] : times(mp, k)) acc[u] += ck * d;
  }
  std::vector<std::pair<Mono, Rational>> out;
  for (auto& [u, c] : acc)
    if (c != 0) out.push_back({u, c});
  std::lock_guard<std::mutex> lock(cache_->mu);
  return cache_->times.emplace(key, std::move(out)).first->second;
}

UEAElement::UEAElement(int n) : n_(n) {}

UEAElement::UEAElement(int n, const Poly& scalar) : n_(n) {
  if (!scalar.is_zero()) t_.emplace(Mono(SlAlgebra::get(n).dim, 0), scalar);
}

UEAElement UEAElement::generator(int n, int g) {
  const auto& L = SlAlgebra::get(n);
  UEAElement r(n);
  Mono m(L.dim, 0);
  m[g] = 1;
  r.t_.emplace(m, Poly(1));
  return r;
}

UEAElement UEAElement::coweight(int n, int k) {
  const auto& C = cartan(n);
  UEAElement r(n);
  for (int j = 0; j < C.rank; ++j) r += h(n, j) * Poly(C.Ainv[k][j]);
  return r;
}

void UEAElement::add_term(const Mono& m, const Poly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = t_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

UEAElement& UEAElement::operator+=(const UEAElement& o) {
  if (o.n_ != n_) throw std::invalid_argument("rank mismatch");
  for (auto& [m, c] : o.t_) add_term(m, c);
  return *this;
}

UEAElement& UEAElement::operator-=(const UEAElement& o) {
  if (o.n_ != n_) throw std::invalid_argument("rank mismatch");
  for (auto& [m, c] : o.t_) add_term(m, -c);
  return *this;
}

UEAElement& UEAElement::operator*=(const Poly& c) {
  if (c.is_zero()) {
    t_.clear();
    return *this;
  }
  for (auto& [m, v] : t_) v *= c;
  return *this;
}

UEAElement UEAElement::operator-() const {
  UEAElement r = *this;
  for (auto& [m, v] : r.t_) v = -v;
  return r;
}

UEAElement operator*(const UEAElement& a, const UEAElement& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("rank mismatch");
  const auto& L = SlAlgebra::get(a.n_);
  UEAElement out(a.n_);
  for (auto& [mb, cb] : b.t_) {
    // expand mb as a word, multiply a by its letters one at a time
    std::map<Mono, Poly> cur(a.t_.begin(), a.t_.end());
    for (int g = 0; g < L.dim; ++g) {
      for (int r = 0; r < mb[g]; ++r) {
        std::map<Mono, Poly> next;
        for (auto& [m, c] : cur)
          for (auto& [u, d] : L.times(m, g)) {
            auto& slot = next[u];
            slot += c * d;
          }
        cur.clear();
        for (auto& [u, c] : next)
          if (!c.is_zero()) cur.emplace(u, c);
      }
    }
    for (auto& [m, c] : cur) out.add_term(m, c * cb);
  }
  return out;
}

UEAElement UEAElement::pow(int k) const {
  UEAElement r(n_, Poly(1));
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

UEAElement UEAElement::substitute(const std::map<Var, Poly>& values) const {
  UEAElement r(n_);
  for (auto& [m, c] : t_) r.add_term(m, c.substitute(values));
  return r;
}

int UEAElement::degree() const {
  int d = -1;
  for (auto& [m, c] : t_) {
    int s = 0;
    for (auto x : m) s += x;
    d = std::max(d, s);
  }
  return d;
}

std::string mono_str(int n, const Mono& m) {
  const auto& L = SlAlgebra::get(n);
  std::string s;
  for (int g = 0; g < L.dim; ++g) {
    if (!m[g]) continue;
    if (!s.empty()) s += "*";
    s += L.gens[g].name;
    if (m[g] > 1) s += "^" + std::to_string(m[g]);
  }
  return s.empty() ? "1" : s;
}

namespace {
bool mono_less(const Mono& a, const Mono& b) {
  int da = 0, db = 0;
  for (auto x : a) da += x;
  for (auto x : b) db += x;
  if (da != db) return da < db;
  return a > b;
}
}  // namespace

std::string UEAElement::str() const {
  if (t_.empty()) return "0";
  std::vector<const Terms::value_type*> order;
  for (auto& kv : t_) order.push_back(&kv);
  std::sort(order.begin(), order.end(), [](auto* x, auto* y) { return mono_less(x->first, y->first); });
  std::ostringstream os;
  bool first = true;
  for (auto* kv : order) {
    if (!first) os << " + ";
    first = false;
    std::string ms = mono_str(n_, kv->first);
    const Poly& c = kv->second;
    if (ms == "1") {
      os << "(" << c.str() << ")";
    } else if (c == Poly(1)) {
      os << ms;
    } else {
      os << "(" << c.str() << ")*" << ms;
    }
  }
  return os.str();
}

UEAElement commutator(const UEAElement& a, const UEAElement& b) {
  if (a.n() != b.n()) throw std::invalid_argument("commutator: rank mismatch");
  return a * b - b * a;
}

UEAElement ad_power(const UEAElement& x, const UEAElement& y, int k) {
  UEAElement r = y;
  for (int i = 0; i < k; ++i) r = commutator(x, r);
  return r;
}

UEAElement casimir2(int n) {
  const auto& L = SlAlgebra::get(n);
  const auto& C = cartan(n);
  UEAElement c(n);
  for (int g = L.first_e(); g < L.dim; ++g) {
    auto e = UEAElement::generator(n, g);
    auto f = UEAElement::generator(n, L.f(L.gens[g].i, L.gens[g].j));
    c += e * f + f * e;
  }
  for (int i = 0; i < C.rank; ++i)
    for (int j = 0; j < C.rank; ++j) c += (UEAElement::h(n, i) * UEAElement::h(n, j)) * Poly(C.Ainv[i][j]);
  return c;
}

namespace {

UEAElement map_monomials(const UEAElement& a, const std::vector<UEAElement>& images, bool reverse) {
  const auto& L = SlAlgebra::get(a.n());
  UEAElement out(a.n());
  for (auto& [m, c] : a.terms()) {
    std::vector<int> word;
    for (int g = 0; g < L.dim; ++g)
      for (int r = 0; r < m[g]; ++r) word.push_back(g);
    if (reverse) std::reverse(word.begin(), word.end());
    UEAElement t(a.n(), c);
    for (int g : word) t = t * images[g];
    out += t;
  }
  return out;
}

}  // namespace

UEAElement chevalley_antiinvolution(const UEAElement& a) {
  const auto& L = SlAlgebra::get(a.n());
  std::vector<UEAElement> img;
  for (int g = 0; g < L.dim; ++g) {
    const auto& G = L.gens[g];
    int t = G.type == GenType::E ? L.f(G.i, G.j) : G.type == GenType::F ? L.e(G.i, G.j) : g;
    img.push_back(UEAElement::generator(a.n(), t));
  }
  return map_monomials(a, img, true);
}

std::pair<int, int> diagram_image(int n, int g) {
  const auto& L = SlAlgebra::get(n);
  const auto& G = L.gens[g];
  if (G.type == GenType::H) return {1, L.h(n - 2 - G.i)};
  // E_ij -> (-1)^{j-i+1} E_{n-1-j, n-1-i} (0-based)
  int sign = ((G.j - G.i + 1) % 2 == 0) ? 1 : -1;
  int ni = n - 1 - G.j, nj = n - 1 - G.i;
  return {sign, G.type == GenType::E ? L.e(ni, nj) : L.f(ni, nj)};
}

UEAElement diagram_automorphism(const UEAElement& a) {
  const auto& L = SlAlgebra::get(a.n());
  std::vector<UEAElement> img;
  for (int g = 0; g < L.dim; ++g) {
    auto [s, t] = diagram_image(a.n(), g);
    img.push_back(UEAElement::generator(a.n(), t) * Poly(s));
  }
  return map_monomials(a, img, false);
}

}  // namespace toda
