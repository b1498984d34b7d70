#include "doctest.h"

#include "toda/borel_weil.hpp"
#include "toda/images.hpp"
#include "toda/intertwiners.hpp"
#include "toda/whittaker.hpp"

using namespace toda;

TEST_CASE("borel-weil fields satisfy the sl2 relations") {
  auto F = derive_generator_fields(2, symbolic_weight(2, VarKind::lambda));
  const auto& L = SlAlgebra::get(2);
  Poly v = Poly::var(cellx(0, 1), 3) + Poly::var(cellx(0, 1));
  auto e = F[L.e(0)], f = F[L.f(0)], h = F[L.h(0)];
  Poly ef = apply_field(e, apply_field(f, v)) - apply_field(f, apply_field(e, v));
  CHECK(ef == apply_field(h, v));
}

TEST_CASE("borel-weil realization of sl3 respects brackets") {
  auto F = derive_generator_fields(3, symbolic_weight(3, VarKind::lambda));
  const auto& L = SlAlgebra::get(3);
  Poly v = Poly::var(cellx(0, 1)) * Poly::var(cellx(1, 2)) + Poly::var(cellx(0, 2), 2);
  for (int a = 0; a < L.dim; ++a)
    for (int b = 0; b < L.dim; ++b) {
      Poly lhs = apply_field(F[a], apply_field(F[b], v)) - apply_field(F[b], apply_field(F[a], v));
      Poly rhs;
      for (auto& [g, c] : L.bracket[a][b]) rhs += apply_field(F[g], v) * c;
      CHECK(lhs == rhs);
    }
}

TEST_CASE("truncated whittaker vector is an e-eigenvector") {
  for (int n = 2; n <= 3; ++n) {
    WhittakerSpec s = WhittakerSpec::symbolic(n);
    EigenReport r = check_eigenproperty(whittaker_vector(s, 6), s);
    CHECK_MESSAGE(r.pass, r.first_failure);
  }
}

TEST_CASE("whittaker solution space is one dimensional") {
  WhittakerSpec s;
  s.n = 3;
  s.lambda = numeric_weight({Rational(1, 3), Rational(2, 5)});
  s.mu_left = {Poly(1), Poly(1)};
  s.mu_right = {Poly(2), Poly(Rational(-1, 2))};
  CHECK(whittaker_solution_dimension(s, 4) == 1);
}

TEST_CASE("dual whittaker kernel closed form") {
  for (int n = 2; n <= 3; ++n)
    for (auto& r : dual_kernel_residuals(dual_whittaker_kernel(n))) CHECK(r.is_zero());
}

TEST_CASE("pbw encoding round trip") {
  UEAElement X = UEAElement::f(3, 0) * UEAElement::f(3, 1) * Poly(3) + UEAElement::f(3, 0, 2);
  CHECK(decode_pbw(3, encode_pbw(X)) == X);
}

TEST_CASE("sl2 maps are equivariant, the perturbed one is not") {
  CHECK(check_equivariance(build_map("SL2_PHI_PLUS"), 6).pass);
  CHECK(check_equivariance(build_map("SL2_PHI_MINUS_INV"), 6).pass);
  CHECK_FALSE(check_equivariance(perturbed_sl2_phi_plus(), 6).pass);
}

TEST_CASE("clebsch-gordan coefficients match the closed pattern") {
  CgTable t = solve_cg_coefficients(2, 6);
  CHECK(t.all_match);
  for (auto& s : t.samples) CHECK(s.kernel_dim == 1);
}

TEST_CASE("sl2 whittaker image operator form") {
  ImageCheck c = verify_whittaker_image(whittaker_image("SL2_PHI_PLUS"), 7, 2, 5);
  CHECK_MESSAGE(c.pass, c.failure);
  CHECK(c.samples == 2);
}

TEST_CASE("unknown map id throws") { CHECK_THROWS(build_map("SL4_NOTHING")); }
