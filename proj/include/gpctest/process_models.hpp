#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "gpctest/matrix.hpp"
#include "gpctest/random.hpp"

namespace gpctest {

// Observation grid 0 = t_1 < ... < t_d = 1.
class GridSpec {
 public:
  // Throws DomainError unless the points are strictly increasing from exactly 0 to exactly 1.
  explicit GridSpec(std::vector<double> points);
  static GridSpec equidistant(std::size_t d);

  std::span<const double> points() const { return points_; }
  std::size_t size() const { return points_.size(); }

 private:
  std::vector<double> points_;
};

// Paths of a process observed on a grid, one row per path.
struct ProcessSample {
  GridSpec grid;
  Matrix values;
  std::function<double(double)> margin_df;  // common marginal df of every column
};

// X_t = -V / (2 exp(max(eta1 / (1 - t), eta2 / t))) with eta1, eta2 standard
// negative exponential and V ~ H_lambda. At t = 0 (t = 1) only the eta1
// (eta2) branch survives. Per path the draws are eta1, eta2, then V.
ProcessSample sample_example_process(std::size_t n, double lambda, const GridSpec& grid, Rng& rng);

// P(X_t <= x) = F_lambda(2x), independent of t.
double process_margin_cdf(double x, double lambda);

}  // namespace gpctest
