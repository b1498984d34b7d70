#include "doctest.h"

#include <cmath>

#include "toda/evaluator.hpp"
#include "toda/quadrature.hpp"

using namespace toda;

TEST_CASE("macdonald K against the library Bessel function") {
  for (double nu : {0.0, 0.5, 1.3, 4.0})
    for (double z : {0.1, 1.0, 7.5}) {
      EvalResult r = macdonald_K(nu, z, QuadratureSpec{1e-13, 12});
      CHECK(r.converged);
      CHECK(r.value == doctest::Approx(std::cyl_bessel_k(nu, z)).epsilon(1e-11));
    }
}

TEST_CASE("power-exp moments") {
  // int x^{p} exp(-b/x - c x) = 2 (b/c)^{(p+1)/2} K_{p+1}(2 sqrt(bc))
  double b = 0.7, c = 1.9;
  auto r = power_exp_moments(-2.5, b, c, {0, 1, 2});
  for (int j = 0; j < 3; ++j) {
    double p = -2.5 + j;
    double ref = 2 * std::pow(b / c, (p + 1) / 2) * std::cyl_bessel_k(std::fabs(p + 1), 2 * std::sqrt(b * c));
    CHECK(r[j].converged);
    CHECK(r[j].value == doctest::Approx(ref).epsilon(1e-11));
  }
}

TEST_CASE("tanh-sinh handles endpoint singularities") {
  auto r = tanh_sinh_unit([](double u, double v) { return std::vector<double>{1 / std::sqrt(u), std::log(v)}; }, 2,
                          QuadratureSpec{1e-12, 12});
  CHECK(r.converged);
  CHECK(r.value[0] == doctest::Approx(2).epsilon(1e-10));
  CHECK(r.value[1] == doctest::Approx(-1).epsilon(1e-10));
}

TEST_CASE("pairwise sum is independent of thread count") {
  std::vector<double> v(1000);
  for (size_t i = 0; i < v.size(); ++i) v[i] = 1.0 / (i + 1);
  double s1 = pairwise_sum(v);
  std::vector<double> slot(v.size());
  set_num_threads(3);
  parallel_for(v.size(), [&](size_t i) { slot[i] = v[i]; });
  set_num_threads(1);
  CHECK(pairwise_sum(slot) == s1);
}

TEST_CASE("sl2 series partial sums") {
  // l = 0, p = 1: sum 1/(i! (0,i)) only keeps i = 0
  CHECK(eval_series_sl2(0.5, 0.0, 0.3).value == doctest::Approx(std::exp(0.15)));
  EvalJet j = series_sl2_jet(1.5, -0.8, 0.2, 2);
  double h = 1e-4;
  double fd = (eval_series_sl2(1.5, -0.8, 0.2 + h).value - eval_series_sl2(1.5, -0.8, 0.2 - h).value) / (2 * h);
  CHECK(j.d(1) == doctest::Approx(fd).epsilon(1e-7));
}

TEST_CASE("sl2 integral jets vs finite differences") {
  NumericSpec s{2, {0.7}, {1.0}, {1.5}};
  EvalJet j = integral_sl2_jet(s, 0.1, 2, QuadratureSpec{1e-13, 12});
  double h = 1e-3;
  double a = eval_integral_sl2(s, 0.1 + h).value, b = eval_integral_sl2(s, 0.1).value,
         c = eval_integral_sl2(s, 0.1 - h).value;
  CHECK(j.d(0) == doctest::Approx(b).epsilon(1e-12));
  CHECK(j.d(2) == doctest::Approx((a - 2 * b + c) / (h * h)).epsilon(1e-5));
}

TEST_CASE("sl3 integral agrees with the Bessel reduction") {
  NumericSpec s{3, {0.4, 0.6}, {1.0, 1.0}, {1.0, 0.8}};
  EvalResult r = eval_integral_sl3(s, 0.2, -0.1);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(integral_sl3_bessel(s, 0.2, -0.1)).epsilon(1e-6));
}

TEST_CASE("input validation") {
  NumericSpec bad{2, {0.5}, {std::nan("")}, {1.0}};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  NumericSpec wrong{3, {0.5}, {1.0}, {1.0}};
  CHECK_THROWS_AS(wrong.validate(), std::invalid_argument);
}
