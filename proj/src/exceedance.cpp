#include "gpctest/exceedance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fmt/format.h>

#include "gpctest/errors.hpp"

namespace gpctest {
namespace {

void check_threshold(double c, std::size_t k) {
  if (!(c > 0.0 && c < 1.0)) throw DomainError(fmt::format("threshold c = {} outside (0,1)", c));
  if (k < 2) throw DomainError(fmt::format("k = {} must be >= 2", k));
}

}  // namespace

SubsetSpec SubsetSpec::parse(const std::string& text) {
  if (text == "full") return full();
  if (text == "auto") return automatic();
  if (text.rfind("m=", 0) == 0) {
    std::size_t m = 0;
    const char* first = text.data() + 2;
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, m);
    if (ec == std::errc() && ptr == last && m > 0) return prefix(m);
  }
  throw ConfigError(fmt::format("invalid subset '{}': expected full, auto or m=<int>", text));
}

std::size_t SubsetSpec::resolve(std::size_t n) const {
  std::size_t m = n;
  switch (mode_) {
    case Mode::Full:
      break;
    case Mode::Automatic: {
      const double log_n = std::log(static_cast<double>(std::max<std::size_t>(n, 3)));
      m = static_cast<std::size_t>(std::floor(static_cast<double>(n) / (log_n * log_n)));
      break;
    }
    case Mode::Prefix:
      m = m_;
      break;
  }
  if (m > n) throw DomainError(fmt::format("subset size {} exceeds sample size {}", m, n));
  if (m == 0) throw DomainError(fmt::format("subset of a sample of size {} is empty", n));
  return m;
}

std::vector<std::size_t> SubsetSpec::indices(std::size_t n) const {
  std::vector<std::size_t> idx(resolve(n));
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return idx;
}

std::string SubsetSpec::describe() const {
  switch (mode_) {
    case Mode::Full:
      return "full";
    case Mode::Automatic:
      return "auto";
    case Mode::Prefix:
      return fmt::format("m={}", m_);
  }
  return {};
}

std::size_t threshold_rank(std::size_t n, double c, std::size_t j) {
  const double x = static_cast<double>(n) * (1.0 - c / static_cast<double>(j));
  // The slack absorbs rounding in n(1 - c/j) when it is mathematically an integer.
  const double rank = std::ceil(x - 1e-9 * std::max(1.0, x));
  return static_cast<std::size_t>(std::max(rank, 1.0));
}

ExceedanceCounts count_exceedances(const UniformSample& data, double c, std::size_t k) {
  check_threshold(c, k);
  if (data.rows() == 0 || data.cols() == 0) throw DomainError("count_exceedances: empty data");
  ExceedanceCounts out{std::vector<std::int64_t>(k, 0), data.rows(), data.rows(), data.cols(), c, k};
  std::vector<double> thresholds(k);
  for (std::size_t j = 0; j < k; ++j) thresholds[j] = 1.0 - c / static_cast<double>(j + 1);

  for (std::size_t i = 0; i < data.rows(); ++i) {
    const auto row = data.row(i);
    const double top = *std::max_element(row.begin(), row.end());
    // thresholds rise with j: stop at the first one not exceeded
    for (std::size_t j = 0; j < k && top > thresholds[j]; ++j) ++out.counts[j];
  }
  return out;
}

ExceedanceCounts count_exceedances_empirical(const Matrix& data, double c, std::size_t k,
                                             std::span<const std::size_t> subset) {
  check_threshold(c, k);
  const std::size_t n = data.rows();
  const std::size_t d = data.cols();
  if (n == 0 || d == 0) throw DomainError("count_exceedances_empirical: empty data");
  if (subset.size() > n) {
    throw DomainError(fmt::format("subset size {} exceeds sample size {}", subset.size(), n));
  }

  // thresholds(j, r) = X_{<n(1-c/j)>:n, r}
  Matrix thresholds(k, d);
  std::vector<std::size_t> ranks(k);
  for (std::size_t j = 0; j < k; ++j) {
    ranks[j] = threshold_rank(n, c, j + 1);
    if (ranks[j] > n) {
      throw DomainError(fmt::format("order statistic rank {} exceeds sample size {}", ranks[j], n));
    }
  }
  std::vector<double> column(n);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t i = 0; i < n; ++i) column[i] = data(i, r);
    // Ranks increase with j, so each selection only needs to look right of the previous one.
    auto lower = column.begin();
    for (std::size_t j = 0; j < k; ++j) {
      auto nth = column.begin() + static_cast<std::ptrdiff_t>(ranks[j] - 1);
      std::nth_element(lower, nth, column.end());
      thresholds(j, r) = *nth;
      lower = nth;
    }
  }

  ExceedanceCounts out{std::vector<std::int64_t>(k, 0), n, subset.size(), d, c, k};
  for (std::size_t i : subset) {
    if (i >= n) throw DomainError(fmt::format("subset index {} out of range", i));
    const auto row = data.row(i);
    for (std::size_t j = 0; j < k; ++j) {
      bool exceeds = false;
      for (std::size_t r = 0; r < d && !exceeds; ++r) exceeds = row[r] > thresholds(j, r);
      if (!exceeds) break;
      ++out.counts[j];
    }
  }
  return out;
}

ExceedanceCounts count_exceedances_empirical(const Matrix& data, double c, std::size_t k,
                                             const SubsetSpec& subset) {
  if (data.rows() == 0) throw DomainError("count_exceedances_empirical: empty data");
  const auto idx = subset.indices(data.rows());
  return count_exceedances_empirical(data, c, k, idx);
}

ExceedanceCounts count_exceedances_process(const ProcessSample& sample, double c, std::size_t k,
                                           const SubsetSpec& subset) {
  if (sample.values.cols() != sample.grid.size()) {
    throw DomainError("process sample does not match its grid");
  }
  return count_exceedances_empirical(sample.values, c, k, subset);
}

}  // namespace gpctest
