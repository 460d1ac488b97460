#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gpctest/copula_models.hpp"
#include "gpctest/exceedance.hpp"
#include "gpctest/limit_dist.hpp"
#include "gpctest/process_models.hpp"
#include "gpctest/test_statistic.hpp"

namespace gpctest {

// The example process observed on a grid.
struct ProcessModel {
  double lambda = 0.0;
  GridSpec grid = GridSpec::equidistant(50);
  std::string describe() const;
};

using ExperimentModel = std::variant<CopulaModel, ProcessModel>;

// Known: data are copula observations, thresholds are 1 - c/j.
// Empirical: thresholds are per-column order statistics over all rows and
// only the rows of `subset` are counted.
enum class MarginMode { Known, Empirical };

struct CountingScheme {
  MarginMode margins = MarginMode::Known;
  SubsetSpec subset = SubsetSpec::full();
};

struct ExperimentConfig {
  ExperimentModel model;
  std::size_t n = 10000;
  std::vector<double> thresholds{0.2};
  std::size_t k = 2;
  std::size_t replications = 1000;
  // Copula models: full -> known margins on all rows; anything else ->
  // empirical thresholds with that subset. Process models always use
  // empirical thresholds.
  SubsetSpec subset = SubsetSpec::full();
  std::uint64_t seed = 1;
  std::string output;
  unsigned threads = 1;

  // Throws ConfigError on an invalid combination.
  void validate() const;
  CountingScheme scheme() const;
};

// Evenly spaced grid of `steps` points from first to last inclusive.
std::vector<double> threshold_grid(double first, double last, std::size_t steps);
// 60 points from 0.01 to 0.60.
std::vector<double> default_threshold_grid();
// Comma-separated values or "a:b:steps" ranges, returned sorted; throws ConfigError.
std::vector<double> parse_thresholds(const std::string& text);

ExceedanceCounts count_with_scheme(const Matrix& data, double c, std::size_t k, const CountingScheme& scheme);

// Counts, statistic and p-value against `law` for one dataset and threshold.
// A degenerate sample yields a report without statistic / p-value.
TestReport run_test(const Matrix& data, double c, std::size_t k, const CountingScheme& scheme,
                    const WeightedChiSquareLaw& law);

// One-shot test on raw data with empirical margins.
TestReport test_dataset(const Matrix& data, double c, std::size_t k, const SubsetSpec& subset);

// Replication r draws its sample from Rng::substream(seed, r) and is tested
// at every configured threshold. Reports are ordered by (rep, threshold)
// whatever the thread count.
std::vector<TestReport> run_replicated_test(const ExperimentConfig& config);

// Sample of the configured model for replication `rep`.
Matrix draw_dataset(const ExperimentConfig& config, std::size_t rep);

// (j / (R + 1), p_(j)), j = 1..R, with p sorted ascending.
std::vector<std::pair<double, double>> quantile_plot_points(std::vector<double> p_values);

struct PValueCurve {
  std::vector<double> thresholds;
  std::vector<std::optional<double>> p_values;  // empty where no exceedances
  std::uint64_t dataset_fingerprint = 0;
};

PValueCurve pvalue_curve(const Matrix& data, std::span<const double> thresholds, std::size_t k,
                         const CountingScheme& scheme);

// FNV-1a over the shape and the bit patterns of the entries.
std::uint64_t fingerprint(const Matrix& data);

// Summaries over a batch of reports (missing p-values are skipped).
std::vector<double> collect_p_values(std::span<const TestReport> reports, std::optional<double> c = std::nullopt);
double rejection_rate(std::span<const double> p_values, double level);
// sup |F_emp - F_uniform|.
double ks_distance_uniform(std::vector<double> values);

}  // namespace gpctest
