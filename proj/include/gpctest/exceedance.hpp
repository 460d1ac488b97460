#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gpctest/matrix.hpp"
#include "gpctest/process_models.hpp"

namespace gpctest {

// n_j(c) = number of observations with at least one component above the
// j-th threshold (1 - c/j on the copula scale), j = 1..k. Counts are
// nonincreasing in j because the thresholds rise with j.
struct ExceedanceCounts {
  std::vector<std::int64_t> counts;
  std::size_t n = 0;  // sample size the thresholds were computed from
  std::size_t m = 0;  // number of rows counted (m = n without subsetting)
  std::size_t d = 0;  // components per observation
  double c = 0.0;
  std::size_t k = 0;

  friend bool operator==(const ExceedanceCounts&, const ExceedanceCounts&) = default;
};

// Which rows are counted: all of them, the prefix of size
// floor(n / log^2(max(n, 3))), or an explicit prefix size.
class SubsetSpec {
 public:
  enum class Mode { Full, Automatic, Prefix };

  static SubsetSpec full() { return SubsetSpec(Mode::Full, 0); }
  static SubsetSpec automatic() { return SubsetSpec(Mode::Automatic, 0); }
  static SubsetSpec prefix(std::size_t m) { return SubsetSpec(Mode::Prefix, m); }
  // "full", "auto" or "m=<int>"; throws ConfigError otherwise.
  static SubsetSpec parse(const std::string& text);

  Mode mode() const { return mode_; }
  // Subset size for a sample of n rows; throws DomainError if m > n or m == 0.
  std::size_t resolve(std::size_t n) const;
  std::vector<std::size_t> indices(std::size_t n) const;
  std::string describe() const;

 private:
  SubsetSpec(Mode mode, std::size_t m) : mode_(mode), m_(m) {}
  Mode mode_;
  std::size_t m_;
};

// 1-based rank <n(1 - c/j)> (smallest integer >= n(1 - c/j)) of the order
// statistic used as the empirical j-th threshold.
std::size_t threshold_rank(std::size_t n, double c, std::size_t j);

// Counts on copula-scale data with the exact thresholds 1 - c/j.
ExceedanceCounts count_exceedances(const UniformSample& data, double c, std::size_t k);

// Counts with per-column empirical thresholds X_{<n(1-c/j)>:n, r} computed
// from all n rows; only rows listed in `subset` are counted.
ExceedanceCounts count_exceedances_empirical(const Matrix& data, double c, std::size_t k,
                                             std::span<const std::size_t> subset);
ExceedanceCounts count_exceedances_empirical(const Matrix& data, double c, std::size_t k,
                                             const SubsetSpec& subset);

// Grid projection of process paths; thresholds per grid column.
ExceedanceCounts count_exceedances_process(const ProcessSample& sample, double c, std::size_t k,
                                           const SubsetSpec& subset);

}  // namespace gpctest
