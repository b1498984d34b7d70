#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace toda {

using Rational = mpq_class;

// Variables are small integers: kind * 256 + index.
using Var = std::uint16_t;

enum class VarKind : std::uint8_t {
  lambda = 0,  // weight of the first module, l1, l2, ...
  nu = 1,      // weight of the second module
  muL = 2,     // left (dual) eigenvalues
  muR = 3,     // right eigenvalues
  x = 4,       // cell coordinate x_{ij}, index i*16+j
  y = 5,       // second copy of cell coordinates (tensor products)
  aux = 6,     // unknowns of linear systems
  phi = 7,     // formal Cartan parameters
  pbw = 8,     // PBW generator symbols encoding Verma vectors, index = generator
};

constexpr Var make_var(VarKind k, int index) {
  return static_cast<Var>(static_cast<int>(k) * 256 + index);
}
constexpr VarKind var_kind(Var v) { return static_cast<VarKind>(v / 256); }
constexpr int var_index(Var v) { return v % 256; }

inline Var lam(int i) { return make_var(VarKind::lambda, i); }
inline Var nu(int i) { return make_var(VarKind::nu, i); }
inline Var muL(int i) { return make_var(VarKind::muL, i); }
inline Var muR(int i) { return make_var(VarKind::muR, i); }
inline Var cellx(int i, int j) { return make_var(VarKind::x, i * 16 + j); }
inline Var celly(int i, int j) { return make_var(VarKind::y, i * 16 + j); }
inline Var aux(int i) { return make_var(VarKind::aux, i); }
inline Var pbw(int g) { return make_var(VarKind::pbw, g); }

std::string var_name(Var v);

// Sorted (var, exponent) pairs, exponents > 0.
struct Monomial {
  std::vector<std::pair<Var, std::uint16_t>> f;

  int degree() const;
  int degree_in(VarKind k) const;
  int exponent(Var v) const;
  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  Monomial quotient(const Monomial& o) const;  // this / o, requires o | this
  bool operator==(const Monomial& o) const { return f == o.f; }
  bool operator!=(const Monomial& o) const { return f != o.f; }
};

// Graded lexicographic order (a term order).
bool operator<(const Monomial& a, const Monomial& b);

class Poly {
 public:
  using Terms = std::map<Monomial, Rational>;

  Poly() = default;
  Poly(const Rational& c);
  Poly(long c) : Poly(Rational(c)) {}
  Poly(int c) : Poly(Rational(c)) {}
  static Poly var(Var v, int power = 1);

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  int degree() const;
  int degree_in(VarKind k) const;
  int degree_in_var(Var v) const;
  std::vector<Var> variables() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);
  Poly operator-() const;
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  bool operator==(const Poly& o) const { return t_ == o.t_; }
  bool operator!=(const Poly& o) const { return t_ != o.t_; }

  void add_term(const Monomial& m, const Rational& c);
  Poly pow(int k) const;
  Poly derivative(Var v) const;
  // Substitute v -> value (a polynomial).
  Poly substitute(Var v, const Poly& value) const;
  Poly substitute(const std::map<Var, Poly>& values) const;
  Poly evaluate(const std::map<Var, Rational>& values) const;
  double evaluate_double(const std::map<Var, double>& values) const;
  // Keep only terms whose degree in kind k is <= d (resp. == d).
  Poly truncate(VarKind k, int d) const;
  Poly homogeneous_part(VarKind k, int d) const;
  // Coefficient of a monomial in the variables of kind k, as a polynomial in the rest.
  std::map<Monomial, Poly> split(VarKind k) const;
  const Monomial* leading_monomial() const;

  std::string str() const;

 private:
  Terms t_;
};

// Exact division; throws if b does not divide a.
Poly divide_exact(const Poly& a, const Poly& b);
bool divides(const Poly& b, const Poly& a, Poly* quotient = nullptr);

// All monomials of total degree <= d in the given (sorted) variables.
std::vector<Monomial> monomials_upto(const std::vector<Var>& vars, int d);

// Rising/falling helpers on polynomials.
Poly falling(const Poly& x, int k);  // x (x-1) ... (x-k+1)

// Quotient of polynomials; no gcd normalization, equality by cross multiplication.
class RatFunc {
 public:
  RatFunc() : num_(0), den_(1) {}
  RatFunc(const Poly& n) : num_(n), den_(1) {}
  RatFunc(const Rational& c) : num_(c), den_(1) {}
  RatFunc(long c) : num_(c), den_(1) {}
  RatFunc(int c) : num_(c), den_(1) {}
  RatFunc(const Poly& n, const Poly& d);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  RatFunc operator-() const { return RatFunc(-num_, den_); }
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  bool equals(const RatFunc& o) const;

  RatFunc substitute(const std::map<Var, Poly>& values) const;
  Rational evaluate(const std::map<Var, Rational>& values) const;
  double evaluate_double(const std::map<Var, double>& values) const;
  std::string str() const;

 private:
  void normalize();
  Poly num_, den_;
};

std::string rational_str(const Rational& q);

}  // namespace toda
