#pragma once

// Reference computations used only by the tests. They deliberately avoid the
// library's own numerics so that agreement means something.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <vector>

#include "gpctest/matrix.hpp"

namespace oracle {

// Adaptive Simpson with the Richardson correction.
inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                           double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, 50);
}

// Kendall's tau for continuous data (no ties) in O(n log n): sort by x, then
// count inversions in y with a merge sort.
inline double kendall_tau(std::vector<double> x, std::vector<double> y) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ys(n), buffer(n);
  for (std::size_t i = 0; i < n; ++i) ys[i] = y[order[i]];
  double inversions = 0.0;
  for (std::size_t width = 1; width < n; width *= 2) {
    for (std::size_t lo = 0; lo < n; lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, n), hi = std::min(lo + 2 * width, n);
      std::size_t i = lo, j = mid, out = lo;
      while (i < mid && j < hi) {
        if (ys[j] < ys[i]) {
          inversions += static_cast<double>(mid - i);
          buffer[out++] = ys[j++];
        } else {
          buffer[out++] = ys[i++];
        }
      }
      while (i < mid) buffer[out++] = ys[i++];
      while (j < hi) buffer[out++] = ys[j++];
    }
    std::swap(ys, buffer);
  }
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  return 1.0 - 2.0 * inversions / pairs;
}

// sup |F_n - F| for a continuous reference df.
inline double ks_statistic(std::vector<double> sample, const std::function<double(double)>& df) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = df(sample[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

// Two-sample Kolmogorov-Smirnov distance.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

// Critical value of the one-sample KS distance at level 0.01.
inline double ks_critical_001(std::size_t n) { return 1.628 / std::sqrt(static_cast<double>(n)); }

// Empirical P(X_1 <= u_1, ..., X_d <= u_d).
inline double empirical_copula(const gpctest::Matrix& data, const std::vector<double>& u) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    bool inside = true;
    for (std::size_t r = 0; r < data.cols() && inside; ++r) inside = data(i, r) <= u[r];
    hits += inside ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(data.rows());
}

// Fraction of rows whose maximum exceeds `level`.
inline double max_exceedance_rate(const gpctest::Matrix& data, double level) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const auto row = data.row(i);
    hits += *std::max_element(row.begin(), row.end()) > level ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(data.rows());
}

// Regularized lower incomplete gamma P(1/2, y) = erf(sqrt(y)); hence
// P(chi^2_1 <= z) = erf(sqrt(z / 2)).
inline double chi2_1_cdf(double z) { return z <= 0.0 ? 0.0 : std::erf(std::sqrt(z / 2.0)); }

}  // namespace oracle
