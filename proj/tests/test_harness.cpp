#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "gpctest/errors.hpp"
#include "gpctest/harness.hpp"
#include "gpctest/io.hpp"

using namespace gpctest;
using Catch::Approx;

namespace {

ExperimentConfig small_config(unsigned threads = 1) {
  return ExperimentConfig{.model = CopulaModel::lemma_one(0.0),
                          .n = 2000,
                          .thresholds = {0.1, 0.2},
                          .k = 3,
                          .replications = 12,
                          .subset = SubsetSpec::full(),
                          .seed = 99,
                          .output = "unused",
                          .threads = threads};
}

}  // namespace

TEST_CASE("threshold grids", "[harness]") {
  CHECK(parse_thresholds("0.2") == std::vector<double>{0.2});
  const auto grid = parse_thresholds("0.1:0.5:5");
  REQUIRE(grid.size() == 5);
  CHECK(grid.front() == 0.1);
  CHECK(grid[2] == Approx(0.3).epsilon(1e-15));
  CHECK(grid.back() == 0.5);
  const auto standard = default_threshold_grid();
  REQUIRE(standard.size() == 60);
  CHECK(standard.front() == 0.01);
  CHECK(standard.back() == 0.6);
  CHECK(standard[9] == Approx(0.10).epsilon(1e-14));
  CHECK(parse_thresholds("0.2,0.01") == std::vector<double>{0.01, 0.2});
  const auto mixed = parse_thresholds("0.5,0.1:0.3:3");
  REQUIRE(mixed.size() == 4);
  CHECK(mixed.front() == 0.1);
  CHECK(mixed.back() == 0.5);
  for (const char* bad : {"", "abc", "0.1:0.2", "0.1:0.2:x", "0.1:0.2:0", "0.1:0.2:2.5", "0.2x", "0.2,", "0.1,0.1"}) {
    CHECK_THROWS_AS(parse_thresholds(bad), ConfigError);
  }
}

TEST_CASE("ExperimentConfig validation", "[harness]") {
  auto config = small_config();
  CHECK_NOTHROW(config.validate());
  config.thresholds = {0.2, 0.1};
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config = small_config();
  config.thresholds = {1.0};
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config = small_config();
  config.replications = 0;
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config = small_config();
  config.k = 1;
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config = small_config();
  config.subset = SubsetSpec::prefix(5000);
  CHECK_THROWS_AS(config.validate(), ConfigError);

  config = small_config();
  CHECK(config.scheme().margins == MarginMode::Known);
  config.subset = SubsetSpec::automatic();
  CHECK(config.scheme().margins == MarginMode::Empirical);
  config.model = ProcessModel{};
  config.subset = SubsetSpec::full();
  CHECK(config.scheme().margins == MarginMode::Empirical);
}

TEST_CASE("run_replicated_test layout and determinism", "[harness]") {
  const auto config = small_config();
  const auto reports = run_replicated_test(config);
  REQUIRE(reports.size() == 24);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    CHECK(reports[i].params.rep == i / 2);
    CHECK(reports[i].params.c == config.thresholds[i % 2]);
    CHECK(reports[i].params.n == 2000);
    CHECK(reports[i].params.m == 2000);
    CHECK(reports[i].params.k == 3);
    CHECK(reports[i].params.family == "lemma1(lambda=0)");
    REQUIRE(reports[i].p_value);
    CHECK(*reports[i].p_value >= 0.0);
    CHECK(*reports[i].p_value <= 1.0);
    CHECK(*reports[i].statistic >= 0.0);
  }
  CHECK(format_reports_csv(run_replicated_test(config)) == format_reports_csv(reports));
  CHECK(format_reports_csv(run_replicated_test(small_config(4))) == format_reports_csv(reports));

  auto single = config;
  single.replications = 1;
  single.thresholds = {0.2};
  const auto a = run_replicated_test(single), b = run_replicated_test(single);
  CHECK(format_reports_csv(a) == format_reports_csv(b));
  CHECK(a[0].counts == b[0].counts);

  auto other_seed = config;
  other_seed.seed = 100;
  CHECK(format_reports_csv(run_replicated_test(other_seed)) != format_reports_csv(reports));
}

TEST_CASE("degenerate samples are recorded, not fatal", "[harness]") {
  ExperimentConfig config{.model = CopulaModel::lemma_one(0.0),
                          .n = 10,
                          .thresholds = {0.001},
                          .k = 2,
                          .replications = 5,
                          .seed = 3};
  const auto reports = run_replicated_test(config);
  REQUIRE(reports.size() == 5);
  std::size_t degenerate = 0;
  for (const auto& r : reports) {
    if (!r.p_value) {
      ++degenerate;
      CHECK_FALSE(r.statistic);
      CHECK_FALSE(r.error.empty());
    }
  }
  CHECK(degenerate >= 4);
  CHECK(collect_p_values(reports).size() == 5 - degenerate);
}

TEST_CASE("process experiments use empirical thresholds on a subset", "[harness][process]") {
  ExperimentConfig config{.model = ProcessModel{0.0, GridSpec::equidistant(8)},
                          .n = 3000,
                          .thresholds = {0.2},
                          .k = 2,
                          .replications = 3,
                          .subset = SubsetSpec::automatic(),
                          .seed = 5};
  const auto reports = run_replicated_test(config);
  REQUIRE(reports.size() == 3);
  CHECK(reports[0].params.m == SubsetSpec::automatic().resolve(3000));
  CHECK(reports[0].counts.d == 8);
  CHECK(reports[0].params.family == "process(lambda=0;d=8)");
}

TEST_CASE("quantile_plot_points", "[harness]") {
  const auto points = quantile_plot_points({0.9, 0.1, 0.5});
  REQUIRE(points.size() == 3);
  CHECK(points[0] == std::pair{0.25, 0.1});
  CHECK(points[1] == std::pair{0.5, 0.5});
  CHECK(points[2] == std::pair{0.75, 0.9});

  std::vector<double> flat(1000, 0.5);
  const auto horizontal = quantile_plot_points(flat);
  CHECK(horizontal[0].first == Approx(1.0 / 1001.0));
  CHECK(horizontal[999].first == Approx(1000.0 / 1001.0));
  for (const auto& [x, y] : horizontal) CHECK(y == 0.5);

  std::vector<double> uniform(50);
  for (std::size_t j = 0; j < 50; ++j) uniform[j] = static_cast<double>(50 - j) / 51.0;
  for (const auto& [x, y] : quantile_plot_points(uniform)) CHECK(x == Approx(y).epsilon(1e-15));
}

TEST_CASE("pvalue_curve", "[harness]") {
  Rng rng(81);
  const Matrix data = sample_lemma1(5000, 0.0, rng);
  const auto grid = parse_thresholds("0.05:0.5:10");
  const CountingScheme known{MarginMode::Known, SubsetSpec::full()};
  const auto curve = pvalue_curve(data, grid, 2, known);
  REQUIRE(curve.thresholds == grid);
  REQUIRE(curve.p_values.size() == grid.size());
  for (const auto& p : curve.p_values) {
    REQUIRE(p);
    CHECK(*p >= 0.0);
    CHECK(*p <= 1.0);
  }
  CHECK(curve.dataset_fingerprint == fingerprint(data));

  // Row permutations leave the p-values unchanged; the fingerprint sees the order.
  Matrix reversed(data.rows(), data.cols());
  for (std::size_t i = 0; i < data.rows(); ++i)
    for (std::size_t r = 0; r < data.cols(); ++r) reversed(i, r) = data(data.rows() - 1 - i, r);
  const auto curve_reversed = pvalue_curve(reversed, grid, 2, known);
  CHECK(curve_reversed.p_values == curve.p_values);
  CHECK(curve_reversed.dataset_fingerprint != curve.dataset_fingerprint);
  const CountingScheme empirical{MarginMode::Empirical, SubsetSpec::full()};
  CHECK(pvalue_curve(reversed, grid, 2, empirical).p_values == pvalue_curve(data, grid, 2, empirical).p_values);

  // Constant rows never exceed anything.
  const auto empty = pvalue_curve(Matrix(100, 2, 0.5), grid, 2, known);
  for (const auto& p : empty.p_values) CHECK_FALSE(p);

  const std::vector<double> bad{0.5, 1.2};
  CHECK_THROWS_AS(pvalue_curve(data, bad, 2, known), ConfigError);
}

TEST_CASE("test_dataset uses empirical margins", "[harness]") {
  Rng rng(82);
  const Matrix data = sample_lemma1(10000, 0.0, rng);
  Matrix cubed = data;
  for (double& v : cubed.values()) v = v * v * v;
  const auto a = test_dataset(data, 0.1, 2, SubsetSpec::automatic());
  const auto b = test_dataset(cubed, 0.1, 2, SubsetSpec::automatic());
  CHECK(a.counts == b.counts);
  CHECK(a.p_value == b.p_value);
  CHECK(a.params.m == 117);
  CHECK(a.params.family == "dataset");
}

TEST_CASE("batch summaries", "[harness]") {
  const std::vector<double> p{0.01, 0.04, 0.05, 0.5, 0.9};
  CHECK(rejection_rate(p, 0.05) == Approx(0.4));
  CHECK(rejection_rate({}, 0.05) == 0.0);
  std::vector<double> grid(100);
  for (std::size_t i = 0; i < 100; ++i) grid[i] = (i + 0.5) / 100.0;
  CHECK(ks_distance_uniform(grid) == Approx(0.005));
  CHECK(ks_distance_uniform({0.0}) == 1.0);
}
