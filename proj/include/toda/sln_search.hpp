#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "toda/linsolve.hpp"
#include "toda/uea.hpp"

namespace toda {

// Polynomials P_j in U(b_-) with Phi^{-1}|w_{l+w1}> = sum_j P_j|w_l> (x) |j> for sl(n).
// On the Whittaker vector the intertwining property reduces to
//   [e_k, P_j] = -delta_{kj} P_{j+1}   modulo the ideal e_i -> mu_i (k, j 0-based),
// which leaves one additive constant per P_j (central elements act by scalars). The constants are fixed by the
// Casimir eigenvalue of V_{l+w1} projected on <vac| (x) <i|.

struct AnsatzSpace {
  int n = 2, j = 0, d = 0;
  bool nonsimple = false;  // allow non-simple f's
  std::vector<UEAElement> basis;
  std::vector<std::string> labels;
};

// PBW monomials in f's times monomials in the fundamental coweights Lambda_i, total degree <= d.
// Column order puts the constant last and f_{n-1} just before it, so those become the free columns.
AnsatzSpace ansatz_space(int n, int j, int d, bool nonsimple = false);

// Coefficient matrix of c -> ([e_k, sum c_b B_b] reduced), rows indexed by (k, PBW monomial), and the right-hand
// side -next (placed in the k = j block). next is given as numerator with a common denominator.
struct RecurrenceSystem {
  AnsatzSpace space;
  std::vector<std::pair<int, Mono>> rows;
  std::vector<std::vector<Poly>> A;
  std::vector<Poly> b;  // numerators, over den
  Poly den = Poly(1);
};

RecurrenceSystem setup_recurrence(int n, int j, int d, const UEAElement& next_num, const Poly& next_den,
                                  bool nonsimple = false);

struct PSolution {
  int n = 2, j = 0, d = 0;
  SolveStatus status = SolveStatus::inconsistent;
  bool nonsimple = false;
  UEAElement num;
  Poly den = Poly(1);
  int kernel_dim = 0;
  std::vector<std::string> free_columns;
  bool certified = false;  // commutator residuals recomputed symbolically and zero
  std::string str() const;
};

// P_j with constant term aux(j+1) (j < n-1), or the normalization prod mu_i (j = n-1). The ansatz is extended by
// non-simple f's when the simple one is inconsistent.
PSolution solve_P(int n, int j, int d, const UEAElement& next_num, const Poly& next_den);

struct PChain {
  int n = 2;
  int lowest = 0;
  std::vector<PSolution> P;  // P_0 .. P_{n-1}; entries below lowest are not computed
  bool certified = false;
  std::string note;
};

// P_lowest .. P_{n-1}; symbols l_i, mR_i. With lowest = 0 the constants are fixed, otherwise they stay aux(j+1).
// P_j uses ansatz degree n-1-j, or lowest_degree for P_lowest when given.
PChain solve_chain(int n, int lowest = 0, int lowest_degree = -1);

// Symbolic residuals [e_k, P_j] + delta_{kj} P_{j+1} after reduction; empty when all vanish.
std::vector<std::string> recurrence_residuals(const PChain& c);

struct ConsistencyReport {
  bool pass = true;
  int samples = 0;
  int cut = 0;
  std::string failure;
};

// Applies the P_j to truncated Borel-Weil Whittaker vectors of V_l at random rational samples and checks that
// sum_j P_j|w> (x) |j> satisfies e_k-eigen equations and the Casimir eigenvalue of V_{l+w1} on degrees
// <= D - 2 - max deg P.
ConsistencyReport whittaker_image_consistency(const PChain& c, int D, int nsamples, std::uint64_t seed);

struct PatternCheck {
  std::string what;
  bool pass = false;
  std::string detail;
};

// P_{n-1} = prod mu, P_{n-2} = (Lambda_{n-1} + C) mu_1..mu_{n-2}, and the f and quadratic part of P_{n-3}.
std::vector<PatternCheck> first_polynomials_check(const PChain& c);
// n = 3 against the operator form of Phi^{-1} derived from the Borel-Weil map (up to the common factor).
std::vector<PatternCheck> compare_sl3_image(const PChain& c);
// n = 2 against Phi_+.
std::vector<PatternCheck> compare_sl2_image(const PChain& c);

}  // namespace toda
