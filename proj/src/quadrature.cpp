#include "toda/quadrature.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace toda {

namespace {

std::atomic<int> g_threads{1};

}  // namespace

void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
  int t = std::min<int>(g_threads.load(), static_cast<int>(n));
  if (t <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<size_t> next{0};
  for (int k = 0; k < t; ++k)
    pool.emplace_back([&] {
      for (size_t i = next++; i < n; i = next++) fn(i);
    });
  for (auto& th : pool) th.join();
}

double pairwise_sum(const double* v, size_t n) {
  if (n == 0) return 0;
  if (n <= 8) {
    double s = 0;
    for (size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

void set_num_threads(int n) { g_threads = std::max(1, n); }
int num_threads() { return g_threads.load(); }

std::vector<QuadResult> power_exp_moments(double p, double b, double c, const std::vector<int>& offsets,
                                          const QuadratureSpec& q) {
  if (!(b > 0) || !(c > 0)) throw std::invalid_argument("power_exp_moments: b and c must be positive");
  // log integrand in t: (p+1) t - b e^{-t} - c e^{t}; saddle and curvature
  double s = p + 1;
  double et = (s + std::sqrt(s * s + 4 * b * c)) / (2 * c);
  double t0 = std::log(et);
  double curv = b / et + c * et;
  double w = 1 / std::sqrt(curv);
  const size_t K = offsets.size();

  // log of the integrand for offset j at t; each offset has its own saddle and peak
  auto logf = [&](double t, int j) { return (s + j) * t - b * std::exp(-t) - c * std::exp(t); };
  std::vector<double> tj(K), peak(K);
  for (size_t j = 0; j < K; ++j) {
    double sj = s + offsets[j];
    tj[j] = std::log((sj + std::sqrt(sj * sj + 4 * b * c)) / (2 * c));
    peak[j] = logf(tj[j], offsets[j]);
  }

  std::vector<QuadResult> out(K);
  std::vector<double> prev(K, 0.0), sums(K, 0.0), acc(K, 0.0);
  int nodes = 0;
  // samples t0 + dir * (first + k * stride) until every offset is past its saddle and negligible
  auto sweep = [&](double first, double stride) {
    for (int dir : {1, -1}) {
      for (int k = 0;; ++k) {
        double off = first + k * stride;
        if (dir == -1 && off == 0) continue;
        double t = t0 + dir * off;
        bool tiny = true;
        for (size_t j = 0; j < K; ++j) {
          double lf = logf(t, offsets[j]) - peak[j];
          acc[j] += std::exp(lf);
          if (lf > -80 || (dir == 1 ? t < tj[j] : t > tj[j])) tiny = false;
        }
        ++nodes;
        if (tiny) break;
        if (k > 1000000) throw std::runtime_error("power_exp_moments: runaway range");
      }
    }
  };
  int level = 0;
  double h = w;
  sweep(0, h);
  for (size_t j = 0; j < K; ++j) {
    sums[j] = acc[j];
    prev[j] = sums[j] * h;
  }
  bool done = false;
  while (!done && level < q.max_level) {
    ++level;
    h /= 2;
    std::fill(acc.begin(), acc.end(), 0.0);
    sweep(h, 2 * h);
    done = level >= 2;
    for (size_t j = 0; j < K; ++j) {
      sums[j] += acc[j];
      double cur = sums[j] * h;
      double err = std::fabs(cur - prev[j]);
      out[j].value = cur;
      out[j].est_error = err;
      if (!(err <= q.rel_tol * std::fabs(cur))) done = false;
      prev[j] = cur;
    }
  }
  for (size_t j = 0; j < K; ++j) {
    double scale = std::exp(peak[j]);
    out[j].scaled = out[j].value;
    out[j].log_scale = peak[j];
    out[j].value *= scale;
    out[j].est_error *= scale;
    out[j].levels = level;
    out[j].nodes = nodes;
    out[j].converged = out[j].est_error <= q.rel_tol * std::fabs(out[j].value);
  }
  return out;
}

VecQuadResult tanh_sinh_unit(const std::function<std::vector<double>(double, double)>& f, size_t dim,
                             const QuadratureSpec& q) {
  // u = 1/(1+exp(-pi sinh s)), du/ds = pi cosh s u v
  const double smax = 4.0;
  auto node = [&](double s, std::vector<double>& val) {
    double a = M_PI * std::sinh(s);
    double u, v;
    if (a > 0) {
      double e = std::exp(-a);
      u = 1 / (1 + e);
      v = e / (1 + e);
    } else {
      double e = std::exp(a);
      u = e / (1 + e);
      v = 1 / (1 + e);
    }
    double wgt = M_PI * std::cosh(s) * u * v;
    if (u <= 0 || v <= 0 || wgt == 0) {
      val.assign(dim, 0.0);
      return;
    }
    val = f(u, v);
    for (auto& x : val) x *= wgt;
  };
  VecQuadResult res;
  res.value.assign(dim, 0.0);
  std::vector<double> total(dim, 0.0);
  double h = 0.5;
  std::vector<double> prev(dim, 0.0);
  for (int level = 0; level <= q.max_level; ++level) {
    std::vector<double> pts;
    if (level == 0) {
      for (double s = -smax; s <= smax + 1e-12; s += h) pts.push_back(s);
    } else {
      h /= 2;
      for (double s = -smax + h; s < smax; s += 2 * h) pts.push_back(s);
    }
    std::vector<std::vector<double>> vals(pts.size());
    parallel_for(pts.size(), [&](size_t i) { node(pts[i], vals[i]); });
    res.nodes += static_cast<int>(pts.size());
    std::vector<double> col(pts.size());
    for (size_t d = 0; d < dim; ++d) {
      for (size_t i = 0; i < pts.size(); ++i) col[i] = vals[i][d];
      total[d] += pairwise_sum(col);
    }
    double err = 0, mag = 0;
    for (size_t d = 0; d < dim; ++d) {
      double cur = total[d] * h;
      err = std::max(err, std::fabs(cur - prev[d]));
      mag = std::max(mag, std::fabs(cur));
      prev[d] = cur;
    }
    res.value = prev;
    res.levels = level;
    res.est_error = mag > 0 ? err / mag : err;
    if (!std::isfinite(res.est_error)) throw std::runtime_error("tanh_sinh_unit: non-finite integrand");
    if (level >= 3 && res.est_error <= q.rel_tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace toda
