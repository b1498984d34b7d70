#pragma once

#include <map>
#include <string>
#include <vector>

#include "toda/poly.hpp"
#include "toda/uea.hpp"

namespace toda {

// Finite sum  c * exp(k . phi) * d^a  (derivatives act first), coefficients exact rational functions of the
// parameters.
class DiffExpOp {
 public:
  struct Key {
    std::vector<int> k;  // exponent of exp(sum k_i phi_i)
    std::vector<int> a;  // derivative multi-index
    bool operator<(const Key& o) const { return k != o.k ? k < o.k : a < o.a; }
    bool operator==(const Key& o) const { return k == o.k && a == o.a; }
  };
  using Terms = std::map<Key, RatFunc>;

  explicit DiffExpOp(int nvars = 1);
  static DiffExpOp scalar(int nvars, const RatFunc& c);
  static DiffExpOp exp(int nvars, const std::vector<int>& k);
  static DiffExpOp d(int nvars, int var);

  int nvars() const { return nv_; }
  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  void add_term(const std::vector<int>& k, const std::vector<int>& a, const RatFunc& c);
  int max_order() const;

  DiffExpOp& operator+=(const DiffExpOp& o);
  DiffExpOp& operator-=(const DiffExpOp& o);
  DiffExpOp& operator*=(const RatFunc& c);
  friend DiffExpOp operator+(DiffExpOp a, const DiffExpOp& b) { return a += b; }
  friend DiffExpOp operator-(DiffExpOp a, const DiffExpOp& b) { return a -= b; }
  friend DiffExpOp operator*(DiffExpOp a, const RatFunc& c) { return a *= c; }
  friend DiffExpOp operator*(const RatFunc& c, DiffExpOp a) { return a *= c; }
  // composition (a after b)
  friend DiffExpOp operator*(const DiffExpOp& a, const DiffExpOp& b);

  DiffExpOp substitute(const std::map<Var, Poly>& values) const;
  // Relabel variables: variable i of this operator becomes map[i] of an operator on nvars_total variables.
  DiffExpOp embed(int nvars_total, const std::vector<int>& map) const;
  std::string str(const std::vector<std::string>& names = {}) const;

 private:
  int nv_;
  Terms t_;
};

// Eigenvalue symbols used when compiling matrix elements <w| ... |w'>: f_i <- m[i] on the left, e_i -> r[i] on
// the right (algebraic eigenvalues).
struct EigenSymbols {
  std::vector<Poly> m, r;
  static EigenSymbols standard(int n, int offset = 0);  // muL(offset+i), muR(offset+i)
};

enum class Side { left, right };

// <w| exp(phi.h) P |w'> (side right) or <w| P exp(phi.h) |w'> (side left) as an operator on <w|exp(phi.h)|w'>.
DiffExpOp compile_matrix_element(const UEAElement& P, Side side, const EigenSymbols& s);
// <w| Q exp(phi.h) P |w'>
DiffExpOp compile_pair(const UEAElement& Q, const UEAElement& P, const EigenSymbols& s);

// Weight of the j-th basis vector of the defining representation, as the exponent vector of exp(phi.h).
std::vector<int> fin_weight(int n, int j);

}  // namespace toda
