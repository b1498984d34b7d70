#pragma once

#include <functional>
#include <string>
#include <vector>

namespace toda {

struct QuadratureSpec {
  double rel_tol = 1e-12;
  int max_level = 10;
};

struct QuadResult {
  double value = 0;
  double scaled = 0;     // value * exp(-log_scale), finite even when value under/overflows
  double log_scale = 0;
  double est_error = 0;
  int levels = 0;
  int nodes = 0;
  bool converged = false;
};

// Fixed-order pairwise summation.
double pairwise_sum(const double* v, size_t n);
inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

// Worker threads used for node evaluation. Results do not depend on this value.
void set_num_threads(int n);
int num_threads();
// Runs fn(0..n-1) on up to num_threads() threads; fn must only write to its own slot.
void parallel_for(size_t n, const std::function<void(size_t)>& fn);

// int_0^inf x^(p+j) exp(-b/x - c x) dx for each offset j, with b, c > 0.
// Substitution x = e^t around the saddle; the integrand then decays double exponentially and the trapezoid rule
// is refined by halving the step.
std::vector<QuadResult> power_exp_moments(double p, double b, double c, const std::vector<int>& offsets,
                                          const QuadratureSpec& q = {});

// Tanh-sinh rule on (0,1) for a vector-valued integrand of fixed dimension.
// The integrand receives u and 1-u (both computed without cancellation).
struct VecQuadResult {
  std::vector<double> value;
  double est_error = 0;  // max over components of the last-level change, relative to the largest component
  int levels = 0;
  int nodes = 0;
  bool converged = false;
};

VecQuadResult tanh_sinh_unit(const std::function<std::vector<double>(double u, double v)>& f, size_t dim,
                             const QuadratureSpec& q = {});

}  // namespace toda
