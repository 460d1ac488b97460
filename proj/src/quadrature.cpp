#include "gpctest/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <queue>

namespace gpctest {
namespace {

constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * sum;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  // QUADPACK-style error scaling is overly pessimistic for the smooth
  // integrands here; the raw Gauss/Kronrod difference is used instead.
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureResult integrate_gauss_kronrod(const std::function<double(double)>& f, double a,
                                         double b, double abs_tol, double rel_tol,
                                         std::size_t max_intervals) {
  QuadratureResult result;
  std::priority_queue<Panel> panels;
  Panel first = gk15(f, a, b);
  result.evaluations = 15;
  double total = first.value;
  double error = first.error;
  panels.push(first);

  while (error > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (panels.size() >= max_intervals) {
      result.value = total;
      result.abs_error = error;
      result.intervals = panels.size();
      return result;
    }
    const Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = gk15(f, worst.a, mid);
    const Panel right = gk15(f, mid, worst.b);
    result.evaluations += 30;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }

  // Re-sum to shed the drift accumulated by the incremental updates.
  total = 0.0;
  error = 0.0;
  result.intervals = panels.size();
  while (!panels.empty()) {
    total += panels.top().value;
    error += panels.top().error;
    panels.pop();
  }
  result.value = total;
  result.abs_error = error;
  result.converged = true;
  return result;
}

double WynnEpsilon::push(double partial_sum) {
  // diagonal_ holds the last ascending diagonal of the epsilon table:
  // diagonal_[j] = eps_{j}^{(count - 1 - j)} (eps_{-1} = 0 implicit).
  std::vector<double> next(diagonal_.size() + 1);
  next[0] = partial_sum;
  for (std::size_t j = 1; j < next.size(); ++j) {
    const double diff = next[j - 1] - diagonal_[j - 1];
    const double below = (j >= 2) ? diagonal_[j - 2] : 0.0;
    if (std::abs(diff) <= std::numeric_limits<double>::min() * 1e10) {
      next.resize(j);
      break;
    }
    next[j] = below + 1.0 / diff;
  }
  diagonal_ = std::move(next);
  ++count_;

  // Even columns (0, 2, 4, ...) carry the extrapolated limits; take the
  // highest-order one available.
  const std::size_t top = (diagonal_.size() - 1) & ~std::size_t{1};
  previous_ = last_;
  last_ = diagonal_[top];
  error_ = count_ > 1 ? std::abs(last_ - previous_) : std::numeric_limits<double>::infinity();
  return last_;
}

}  // namespace gpctest
