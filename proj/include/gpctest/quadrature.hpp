#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace gpctest {

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  std::size_t evaluations = 0;
  std::size_t intervals = 0;
  bool converged = false;
};

// Globally adaptive 7/15-point Gauss-Kronrod quadrature on [a, b]. The
// interval with the largest error estimate is bisected until the summed
// error drops below max(abs_tol, rel_tol * |value|) or max_intervals is hit.
QuadratureResult integrate_gauss_kronrod(const std::function<double(double)>& f, double a,
                                         double b, double abs_tol, double rel_tol = 0.0,
                                         std::size_t max_intervals = 2000);

// Wynn's epsilon algorithm over a growing sequence of partial sums; used to
// accelerate the alternating tail series of oscillatory integrals.
class WynnEpsilon {
 public:
  // Appends the next partial sum and returns the current extrapolation.
  double push(double partial_sum);
  // Difference between the last two extrapolated values.
  double error_estimate() const { return error_; }
  std::size_t size() const { return count_; }

 private:
  std::vector<double> diagonal_;
  double last_ = 0.0;
  double previous_ = 0.0;
  double error_ = 0.0;
  std::size_t count_ = 0;
};

}  // namespace gpctest
