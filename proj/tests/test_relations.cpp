#include "doctest.h"

#include <sstream>

#include "toda/diffexp.hpp"
#include "toda/relations.hpp"
#include "toda/report.hpp"

using namespace toda;

namespace {
ResidualReport quick(const std::string& id, double tol) {
  RelationSpec r = make_relation(id);
  return verify(r, default_params(id), standard_grid(r, true), tol);
}
}  // namespace

TEST_CASE("closure defect vanishes") {
  DiffExpOp d = raise_lower_closure_defect();
  CHECK_MESSAGE(d.is_zero(), d.str());
}

TEST_CASE("diffexp composition: d after exp") {
  DiffExpOp d = DiffExpOp::d(1, 0), e = DiffExpOp::exp(1, {2});
  // d (e^{2phi} f) = 2 e^{2phi} f + e^{2phi} f'
  DiffExpOp want = DiffExpOp::exp(1, {2}) * RatFunc(2) + DiffExpOp::exp(1, {2}) * DiffExpOp::d(1, 0);
  CHECK((d * e - want).is_zero());
}

TEST_CASE("toda relations on the quick grid") {
  CHECK(quick("TODA_SL2", 1e-8).pass);
  CHECK(quick("RAISE_SL2_UP", 1e-8).pass);
  CHECK(quick("BAXTER_SL2_A", 1e-8).pass);
}

TEST_CASE("product coefficients reproduce the series product") {
  ResidualReport r = quick("PRODUCT_SL2_SERIES", 1e-8);
  CHECK(r.pass);
  CHECK(r.max_rel < 1e-9);
  // C_0 = 1
  CHECK(product_coefficient(0).equals(RatFunc(1)));
}

TEST_CASE("unknown relation id") { CHECK_THROWS(make_relation("NOT_A_RELATION")); }

TEST_CASE("residual report format") {
  ResidualReport r;
  r.id = "X";
  r.params = {{lam(1), 0.5}};
  r.tol = 1e-8;
  r.points.push_back({{0.25}, 1.0, 1.0, 0.0, 0.0});
  r.pass = true;
  std::ostringstream os;
  write_residual_report(os, r);
  CHECK(os.str() ==
        "# toda-report 1\nrelation_id\tparams\tphi\tlhs\trhs\tabs_res\trel_res\n"
        "X\tl1=0.5\t0.25\t1\t1\t0\t0\n# summary\tX\tpass\tmax_rel=0\ttol=1e-08\n");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(0.1) == "0.10000000000000001");
}
