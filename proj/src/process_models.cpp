#include "gpctest/process_models.hpp"

#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "gpctest/copula_models.hpp"
#include "gpctest/errors.hpp"

namespace gpctest {

GridSpec::GridSpec(std::vector<double> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw DomainError("grid needs at least two points");
  if (points_.front() != 0.0 || points_.back() != 1.0) {
    throw DomainError("grid must start at exactly 0 and end at exactly 1");
  }
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i] > points_[i - 1])) {
      throw DomainError(fmt::format("grid not strictly increasing at index {}", i));
    }
  }
}

GridSpec GridSpec::equidistant(std::size_t d) {
  if (d < 2) throw DomainError("grid needs at least two points");
  std::vector<double> points(d);
  for (std::size_t i = 0; i < d; ++i) points[i] = static_cast<double>(i) / static_cast<double>(d - 1);
  points.back() = 1.0;
  return GridSpec(std::move(points));
}

ProcessSample sample_example_process(std::size_t n, double lambda, const GridSpec& grid, Rng& rng) {
  LambdaFamilyParams params(lambda);
  const auto t = grid.points();
  const std::size_t d = t.size();
  Matrix values(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    const double eta1 = std::log(rng.uniform());
    const double eta2 = std::log(rng.uniform());
    const double v = h_lambda_quantile(rng.uniform(), lambda);
    for (std::size_t r = 0; r < d; ++r) {
      double exponent;
      if (t[r] == 0.0) {
        exponent = eta1;
      } else if (t[r] == 1.0) {
        exponent = eta2;
      } else {
        exponent = std::max(eta1 / (1.0 - t[r]), eta2 / t[r]);
      }
      values(i, r) = -v / (2.0 * std::exp(exponent));
    }
  }
  return {grid, std::move(values), [lambda](double x) { return process_margin_cdf(x, lambda); }};
}

double process_margin_cdf(double x, double lambda) {
  if (!(x <= 0.0)) throw DomainError(fmt::format("process_margin_cdf: x = {} must be <= 0", x));
  return f_lambda_cdf(2.0 * x, lambda);
}

}  // namespace gpctest
