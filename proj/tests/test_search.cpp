#include "doctest.h"

#include "toda/sln_search.hpp"

using namespace toda;

TEST_CASE("n=2 chain matches the sl2 image") {
  PChain c = solve_chain(2);
  CHECK(c.certified);
  for (auto& p : compare_sl2_image(c)) CHECK_MESSAGE(p.pass, (p.what + " " + p.detail));
  CHECK(recurrence_residuals(c).empty());
}

TEST_CASE("n=3 chain matches the sl3 image and is consistent") {
  PChain c = solve_chain(3);
  CHECK(c.certified);
  for (auto& p : compare_sl3_image(c)) CHECK_MESSAGE(p.pass, (p.what + " " + p.detail));
  ConsistencyReport r = whittaker_image_consistency(c, 7, 2, 3);
  CHECK_MESSAGE(r.pass, r.failure);
}

TEST_CASE("ansatz too small has no solution") {
  PChain c3 = solve_chain(3);
  // P_0 needs degree 2
  PSolution s = solve_P(3, 0, 1, c3.P[1].num, c3.P[1].den);
  CHECK(s.status == SolveStatus::inconsistent);
}

TEST_CASE("partial chain refuses the consistency check") {
  PChain c = solve_chain(4, 2);
  CHECK(c.certified);
  CHECK_THROWS(whittaker_image_consistency(c, 6, 1, 1));
}
