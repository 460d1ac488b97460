#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "gpctest/exceedance.hpp"

namespace gpctest {

// T = sum_j (j n_j - a)^2 / a with a = (1/k) sum_l l n_l. It needs no
// knowledge of the extremal coefficient. Throws DegenerateSampleError when
// every count is zero.
double t_statistic(const ExceedanceCounts& counts);

struct ExtremalCoefficient {
  double raw = 0.0;      // (1 / (m c k)) sum_j j n_j
  double clipped = 0.0;  // raw clipped to [1, d]; reporting only
};

ExtremalCoefficient estimate_extremal_coefficient(const ExceedanceCounts& counts);

struct TestParams {
  std::size_t rep = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  double c = 0.0;
  std::size_t k = 0;
  std::string family;
  std::uint64_t seed = 0;
};

// One application of the test. statistic / p_value are empty when the
// sample was degenerate at this threshold; `error` then says why.
struct TestReport {
  std::optional<double> statistic;
  std::optional<double> p_value;
  ExtremalCoefficient m_d_hat;
  ExceedanceCounts counts;
  TestParams params;
  std::string error;
};

}  // namespace gpctest
