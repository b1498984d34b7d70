#include "doctest.h"

#include "toda/linsolve.hpp"
#include "toda/poly.hpp"
#include "toda/uea.hpp"

using namespace toda;

TEST_CASE("poly arithmetic and substitution") {
  Poly x = Poly::var(lam(1)), y = Poly::var(muR(1));
  Poly p = (x + y) * (x - y);
  CHECK(p == x * x - y * y);
  CHECK(p.degree() == 2);
  CHECK(p.substitute(muR(1), x).is_zero());
  CHECK(divide_exact(p, x + y) == x - y);
  CHECK(falling(x, 3) == x * (x - 1) * (x - 2));
  CHECK(p.evaluate({{lam(1), 3}, {muR(1), 1}}).constant_term() == 8);
  CHECK_THROWS(divide_exact(p, x + 2));
}

TEST_CASE("ratfunc equality is by cross multiplication") {
  Poly x = Poly::var(lam(1));
  RatFunc a(x * x - 1, x - 1), b(x + 1);
  CHECK(a.equals(b));
  CHECK((a - b).is_zero());
  CHECK((RatFunc(1) / RatFunc(x) + RatFunc(1) / RatFunc(x)).equals(RatFunc(Poly(2), x)));
}

TEST_CASE("sl2 commutation relations") {
  auto e = UEAElement::e(2, 0), f = UEAElement::f(2, 0), h = UEAElement::h(2, 0);
  CHECK(commutator(e, f) == h);
  CHECK(commutator(h, e) == e * Poly(2));
  CHECK(commutator(h, f) == f * Poly(-2));
  // e f normal orders to f e + h
  CHECK(e * f == f * e + h);
}

TEST_CASE("sl3 Serre relation and Casimir is central") {
  auto e1 = UEAElement::e(3, 0), e2 = UEAElement::e(3, 1);
  CHECK(ad_power(e1, e2, 2).is_zero());
  const UEAElement C = casimir2(3);
  const auto& L = SlAlgebra::get(3);
  for (int g = 0; g < L.dim; ++g) CHECK(commutator(C, UEAElement::generator(3, g)).is_zero());
}

TEST_CASE("casimir central for n=4 on simple generators") {
  const UEAElement C = casimir2(4);
  for (int i = 0; i < 3; ++i) {
    CHECK(commutator(C, UEAElement::e(4, i)).is_zero());
    CHECK(commutator(C, UEAElement::f(4, i)).is_zero());
  }
}

TEST_CASE("chevalley anti-involution reverses products") {
  auto e = UEAElement::e(3, 0), f2 = UEAElement::f(3, 1);
  CHECK(chevalley_antiinvolution(e * f2) == chevalley_antiinvolution(f2) * chevalley_antiinvolution(e));
}

TEST_CASE("sparse solver") {
  SparseSystem s;
  s.ncols = 3;
  s.add_row({{0, 1}, {1, 1}}, 3);
  s.add_row({{1, 1}, {2, -1}}, 1);
  RationalSolution r = solve_sparse(s);
  CHECK(r.status == SolveStatus::underdetermined);
  CHECK(r.rank == 2);
  REQUIRE(r.kernel.size() == 1);
  CHECK(r.x[0] + r.x[1] == 3);
  SparseSystem bad = s;
  bad.add_row({{0, 1}, {1, 1}}, 4);
  CHECK(solve_sparse(bad).status == SolveStatus::inconsistent);
}

TEST_CASE("bareiss over Q[l]") {
  Poly l = Poly::var(lam(1));
  // (l) x + y = 1, x - y = 0  ->  x = y = 1/(l+1)
  PolySolution s = bareiss_solve({{l, Poly(1)}, {Poly(1), Poly(-1)}}, {Poly(1), Poly(0)});
  REQUIRE(s.status == SolveStatus::unique);
  CHECK(RatFunc(s.num[0], s.den).equals(RatFunc(Poly(1), l + 1)));
  CHECK(RatFunc(s.num[1], s.den).equals(RatFunc(Poly(1), l + 1)));
}
