#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "toda/poly.hpp"

namespace toda {

// sl(n) Cartan data; indices 0-based internally, printed 1-based.
struct CartanData {
  int n = 2;
  int rank = 1;
  std::vector<std::vector<int>> A;
  std::vector<std::vector<Rational>> Ainv;
  std::vector<Rational> rho;  // in lambda-coordinates (all ones)
};

const CartanData& cartan(int n);

using Weight = std::vector<Poly>;

Weight symbolic_weight(int n, VarKind k);
Weight numeric_weight(const std::vector<Rational>& v);
Weight operator+(const Weight& a, const Weight& b);
Weight shift(const Weight& a, const std::vector<int>& s);
// <a,b> = sum A^{-1}_ij a_i b_j
Poly weight_form(int n, const Weight& a, const Weight& b);
// Scalar of the quadratic Casimir on V_lambda: <l+rho,l+rho> - <rho,rho>.
Poly casimir_scalar(int n, const Weight& lambda);

enum class GenType : std::uint8_t { F, H, E };

struct Generator {
  GenType type;
  int i, j;  // E_ij / E_ji for roots (0-based, i<j); h index in i
  std::string name;
  std::vector<int> root;  // simple-root coefficients (positive for E)
};

using Mono = std::vector<std::uint8_t>;  // exponent per generator, PBW order

class SlAlgebra {
 public:
  static const SlAlgebra& get(int n);

  int n, rank, dim;
  std::vector<Generator> gens;  // in PBW order
  std::vector<std::vector<std::vector<std::pair<int, Rational>>>> bracket;

  int e(int i, int j) const;  // root vector E_ij, 0-based i<j
  int f(int i, int j) const;  // E_ji
  int e(int i) const { return e(i, i + 1); }
  int f(int i) const { return f(i, i + 1); }
  int h(int k) const { return rank > 0 ? first_h_ + k : -1; }
  int first_h() const { return first_h_; }
  int first_e() const { return first_e_; }
  bool is_simple_e(int g) const;
  bool is_simple_f(int g) const;
  int simple_index(int g) const;  // for simple e/f, else -1

  // Matrix in the defining representation (n x n, row-major).
  std::vector<Rational> matrix(int g) const;
  // Eigenvalue of h_k on generator g.
  int h_eigen(int k, int g) const;

  // Normal-ordered product of a PBW monomial with one generator on the right.
  const std::vector<std::pair<Mono, Rational>>& times(const Mono& m, int g) const;

 private:
  explicit SlAlgebra(int n);
  int first_h_, first_e_;
  struct Cache;
  Cache* cache_;
};

class UEAElement {
 public:
  using Terms = std::map<Mono, Poly>;

  explicit UEAElement(int n = 2);
  UEAElement(int n, const Poly& scalar);
  static UEAElement generator(int n, int g);
  static UEAElement e(int n, int i) { return generator(n, SlAlgebra::get(n).e(i)); }
  static UEAElement f(int n, int i) { return generator(n, SlAlgebra::get(n).f(i)); }
  static UEAElement h(int n, int k) { return generator(n, SlAlgebra::get(n).h(k)); }
  static UEAElement e(int n, int i, int j) { return generator(n, SlAlgebra::get(n).e(i, j)); }
  static UEAElement f(int n, int i, int j) { return generator(n, SlAlgebra::get(n).f(i, j)); }
  // Fundamental coweight Lambda_k = sum_j A^{-1}_kj h_j.
  static UEAElement coweight(int n, int k);

  int n() const { return n_; }
  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  void add_term(const Mono& m, const Poly& c);

  UEAElement& operator+=(const UEAElement& o);
  UEAElement& operator-=(const UEAElement& o);
  UEAElement& operator*=(const Poly& c);
  UEAElement operator-() const;
  friend UEAElement operator+(UEAElement a, const UEAElement& b) { return a += b; }
  friend UEAElement operator-(UEAElement a, const UEAElement& b) { return a -= b; }
  friend UEAElement operator*(const UEAElement& a, const UEAElement& b);
  friend UEAElement operator*(UEAElement a, const Poly& c) { return a *= c; }
  friend UEAElement operator*(const Poly& c, UEAElement a) { return a *= c; }
  bool operator==(const UEAElement& o) const { return n_ == o.n_ && t_ == o.t_; }
  bool operator!=(const UEAElement& o) const { return !(*this == o); }

  UEAElement pow(int k) const;
  // Substitute parameters in coefficients.
  UEAElement substitute(const std::map<Var, Poly>& values) const;
  // Degree where every generator counts 1.
  int degree() const;
  std::string str() const;

 private:
  int n_;
  Terms t_;
};

UEAElement commutator(const UEAElement& a, const UEAElement& b);
UEAElement casimir2(int n);
UEAElement chevalley_antiinvolution(const UEAElement& a);
// Diagram automorphism i -> n-i (a Lie algebra automorphism).
UEAElement diagram_automorphism(const UEAElement& a);
// ad_x^k(y)
UEAElement ad_power(const UEAElement& x, const UEAElement& y, int k);
// Generator-level image of the diagram automorphism: sign and target index.
std::pair<int, int> diagram_image(int n, int g);

std::string mono_str(int n, const Mono& m);

}  // namespace toda
