#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "toda/borel_weil.hpp"
#include "toda/poly.hpp"
#include "toda/uea.hpp"

namespace toda {

// Module realizations that maps act between.
//   bw         polynomials in cell variables x_ij (Borel-Weil)
//   verma      X|vac> encoded with pbw(g) symbols, X in U(n_-)
//   dual_verma <vac|X encoded with pbw(g) symbols, X in U(n_+), right action
//   bw_pair    V_lambda (x) V_nu, polynomials in x and y cells
enum class SpaceKind { bw, verma, dual_verma, bw_pair };

// Optional factor of the first fundamental representation.
//   none, standard (|j> = e_{j+1}), twisted (standard composed with the diagram automorphism)
enum class FinFactor { none, standard, twisted };

struct Space {
  SpaceKind kind = SpaceKind::bw;
  int n = 2;
  Weight lambda;
  Weight nu;  // bw_pair only
  FinFactor fin = FinFactor::none;
  // realized operators, filled on first use
  mutable std::shared_ptr<const std::vector<RealizedGenerator>> fields_x, fields_y;

  int components() const { return fin == FinFactor::none ? 1 : n; }
  bool right_action() const { return kind == SpaceKind::dual_verma; }
  std::string str() const;
};

// Vector in a Space: one polynomial per finite-dimensional component.
using ModVec = std::vector<Poly>;

ModVec act(const Space& s, int generator, const ModVec& v);

// Split a polynomial into module monomials (cells or pbw symbols) and parameter coefficients.
std::map<Monomial, Poly> module_split(const Space& s, const Poly& p);

// Basis vectors (component, module monomial) of degree <= d.
std::vector<std::pair<int, Monomial>> space_basis(const Space& s, int d);

// Verma encoding helpers.
Poly encode_pbw(const UEAElement& X);
UEAElement decode_pbw(int n, const Poly& p);

struct IntertwinerMap {
  std::string map_id;
  Space source, target;
  RatFunc prefactor = RatFunc(1);
  // image of a single basis vector, without the prefactor
  std::function<ModVec(int comp, const Monomial& m)> on_basis;
};

// Registry. Unspecified weights default to symbolic lambda (and nu). k is used by SL2_CG_K.
std::vector<std::string> map_ids();
IntertwinerMap build_map(const std::string& map_id, std::optional<Weight> lambda = std::nullopt,
                         std::optional<Weight> nu = std::nullopt, int k = 0);

// Linear extension without the prefactor.
ModVec apply_map_raw(const IntertwinerMap& m, const ModVec& v);
// Full image: prefactor included; requires the prefactor to be a constant or the caller to substitute first.
struct MapImage {
  RatFunc prefactor;
  ModVec value;  // image = prefactor * value
};
MapImage apply_map(const IntertwinerMap& m, const ModVec& v);

struct EquivarianceReport {
  bool pass = true;
  int checked = 0;
  std::string failure;  // first violated (generator, basis vector) with both sides
};

// Checks m(a v) = a m(v) for Chevalley generators a and basis vectors of degree <= D-1.
EquivarianceReport check_equivariance(const IntertwinerMap& m, int D);

// Perturbed copy used as a negative control: the coefficient n -> n+1 in the second component.
IntertwinerMap perturbed_sl2_phi_plus();

// Exact solve of the equivariance equations for V_lambda (x) V_nu -> V_{lambda+nu-2k} on x^a y^b, a+b <= D,
// normalized by c_{k,0} = 1, at rational sample weights; compared with the closed binomial/falling-factorial pattern.
struct CgTable {
  int k = 0, D = 0;
  struct Sample {
    Rational lambda, nu;
    int kernel_dim = 0;  // dimension of the solution space before normalization
    std::map<std::pair<int, int>, Rational> solved;
    bool match = true;
    std::string mismatch;
  };
  std::vector<Sample> samples;
  std::vector<RatFunc> printed_level;  // pattern c_{k-i,i} / c_{k,0}, i = 0..k
  bool all_match = true;
};
CgTable solve_cg_coefficients(int k, int D);

// Pattern coefficient of d^{k-i} f (x) d^i g, as in the closed formula (without the normalization constant).
RatFunc cg_pattern_coefficient(const Poly& lambda, const Poly& nu, int k, int i);

}  // namespace toda
