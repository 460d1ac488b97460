#pragma once

#include <cstddef>
#include <vector>

#include "gpctest/random.hpp"

namespace gpctest {

// lambda_i = 1 / (4 sin^2(i pi / (2k))), i = 1..k-1; strictly decreasing and
// summing to (k-1)(k+1)/6.
std::vector<double> eigenvalues(std::size_t k);

// Noncentralities of the local-alternative limit,
// mu_i = K sqrt(2s/k) m_D^(1/2+delta) sum_{j=1}^{k-1} (j+1)^(-delta) sin(j i pi / k).
std::vector<double> noncentrality(double K, double s, double delta, double m_d, std::size_t k);

// Law of sum_i w_i (xi_i + mu_i)^2 with xi_i iid standard normal.
class WeightedChiSquareLaw {
 public:
  // Empty noncentralities mean the central law. Throws DomainError for
  // non-positive weights or mismatched lengths.
  WeightedChiSquareLaw(std::vector<double> weights, std::vector<double> noncentralities = {});

  // Null limit of the test statistic for k exceedance levels.
  static WeightedChiSquareLaw null_law(std::size_t k);
  static WeightedChiSquareLaw local_alternative(std::size_t k, std::vector<double> noncentralities);

  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& noncentralities() const { return noncentralities_; }
  // k the law was built from; 0 for laws given by explicit weights.
  std::size_t k() const { return k_; }
  bool is_central() const;

 private:
  std::vector<double> weights_;
  std::vector<double> noncentralities_;
  std::size_t k_ = 0;
};

struct CdfDiagnostics {
  double value = 0.0;      // clipped to [0,1]
  double raw = 0.0;        // before clipping
  double abs_error = 0.0;  // quadrature + extrapolation error estimate (integral scale)
  double upper_limit = 0.0;  // where the oscillatory tail summation stopped
  std::size_t evaluations = 0;
  std::size_t tail_panels = 0;
};

// Imhof's inversion: P(Q <= x) = 1/2 - (1/pi) int_0^inf sin(theta(u)) / (u rho(u)) du.
// Throws NumericError (with diagnostics in the message) if the integral does
// not converge.
CdfDiagnostics cdf_with_diagnostics(const WeightedChiSquareLaw& law, double x);
double cdf(const WeightedChiSquareLaw& law, double x);
double p_value(const WeightedChiSquareLaw& law, double t);

// Monte Carlo estimate of P(Q <= x) from `sample_count` draws.
double mc_cdf(const WeightedChiSquareLaw& law, double x, std::size_t sample_count, Rng& rng);

// `sample_count` draws of Q, e.g. to place Monte Carlo deciles.
std::vector<double> sample_law(const WeightedChiSquareLaw& law, std::size_t sample_count, Rng& rng);

}  // namespace gpctest
