#include <catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "gpctest/errors.hpp"
#include "gpctest/harness.hpp"
#include "gpctest/io.hpp"

using namespace gpctest;
using Catch::Approx;

namespace {

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
  std::size_t count = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++count;
  return count;
}

std::filesystem::path scratch_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("gpctest_unit_" + name);
}

}  // namespace

TEST_CASE("reports CSV round-trip", "[io]") {
  ExperimentConfig config{.model = CopulaModel::lemma_one(0.7),
                          .n = 3000,
                          .thresholds = {0.05, 0.3},
                          .k = 3,
                          .replications = 4,
                          .seed = 17};
  const auto reports = run_replicated_test(config);
  const std::string text = format_reports_csv(reports);
  const CsvTable table = parse_csv(text);
  CHECK(table.header ==
        std::vector<std::string>{"rep", "n", "m", "c", "k", "statistic", "p_value", "m_d_hat", "n_1", "n_2", "n_3"});
  REQUIRE(table.rows.size() == reports.size());
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& row = table.rows[i];
    REQUIRE(row.size() == 11);
    CHECK(std::stoul(row[0]) == reports[i].params.rep);
    CHECK(std::stod(row[3]) == reports[i].params.c);
    CHECK(std::stod(row[5]) == Approx(*reports[i].statistic).epsilon(1e-12));
    CHECK(std::stod(row[6]) == Approx(*reports[i].p_value).epsilon(1e-12));
    CHECK(std::stod(row[7]) == Approx(reports[i].m_d_hat.clipped).epsilon(1e-12));
    for (std::size_t j = 0; j < 3; ++j) CHECK(std::stoll(row[8 + j]) == reports[i].counts.counts[j]);
  }

  const auto path = scratch_file("reports.csv");
  write_reports_csv(reports, path.string());
  const CsvTable from_disk = read_csv(path.string());
  CHECK(from_disk.rows == table.rows);
  std::filesystem::remove(path);
}

TEST_CASE("missing values are empty fields", "[io]") {
  TestReport degenerate;
  degenerate.counts = {{0, 0}, 10, 10, 2, 0.01, 2};
  degenerate.params = {.rep = 3, .n = 10, .m = 10, .c = 0.01, .k = 2};
  const TestReport reports[] = {degenerate};
  const CsvTable table = parse_csv(format_reports_csv(reports));
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows[0][5].empty());
  CHECK(table.rows[0][6].empty());

  PValueCurve curve{{0.1, 0.2, 0.3}, {0.5, std::nullopt, 0.01}, 0};
  CHECK(format_curve_csv(curve) == "c,p_value\n0.1,0.5\n0.2,\n0.3,0.01\n");
  const std::string svg = format_curve_svg(curve, "curve");
  CHECK(count_occurrences(svg, "<circle") == 2);
  CHECK(count_occurrences(svg, "<polyline") == 1);
}

TEST_CASE("SVG plots carry their reference lines and one marker per point", "[io]") {
  std::vector<double> p(137);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<double>((i * 37) % 137) / 137.0;
  const std::string quantile = format_quantile_plot_svg(quantile_plot_points(p), "null");
  CHECK(count_occurrences(quantile, "<circle") == 137);
  CHECK(count_occurrences(quantile, "class=\"reference\"") == 1);
  // The diagonal runs from (0,0) to (1,1) in data coordinates.
  CHECK(quantile.find("<line class=\"reference\" x1=\"50\" y1=\"450\" x2=\"450\" y2=\"50\"") != std::string::npos);

  const PValueCurve curve{{0.1, 0.2}, {0.3, 0.02}, 0};
  const std::string svg = format_curve_svg(curve, "curve");
  CHECK(count_occurrences(svg, "class=\"reference\"") == 1);
  // Horizontal reference at p = 0.05.
  CHECK(svg.find("y1=\"430\" x2=\"450\" y2=\"430\"") != std::string::npos);
  CHECK(count_occurrences(svg, "<circle") == 2);
}

TEST_CASE("dataset CSV reading", "[io]") {
  const auto path = scratch_file("data.csv");
  Matrix data(3, 2);
  data(0, 0) = 0.25;
  data(0, 1) = -1.5e-7;
  data(1, 0) = 3.0;
  data(1, 1) = 0.1;
  data(2, 0) = 1.0 / 3.0;
  data(2, 1) = 12345.678;
  write_sample_csv(data, path.string());
  CHECK(read_dataset_csv(path.string()) == data);

  write_text_file("x,y\n1,2\n3\n", path.string());
  CHECK_THROWS_AS(read_dataset_csv(path.string()), ConfigError);
  write_text_file("x,y\n1,abc\n", path.string());
  CHECK_THROWS_AS(read_dataset_csv(path.string()), ConfigError);
  write_text_file("x,y\n", path.string());
  CHECK_THROWS_AS(read_dataset_csv(path.string()), ConfigError);
  std::filesystem::remove(path);

  try {
    read_csv("/nonexistent/dir/file.csv");
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("/nonexistent/dir/file.csv") != std::string::npos);
  }
  CHECK_THROWS_AS(write_text_file("x", "/nonexistent/dir/out.csv"), IoError);
}

TEST_CASE("process CSV starts with the grid", "[io][process]") {
  Rng rng(91);
  const auto sample = sample_example_process(4, 0.0, GridSpec::equidistant(3), rng);
  const auto path = scratch_file("paths.csv");
  write_process_csv(sample, path.string());
  const CsvTable table = read_csv(path.string());
  CHECK(table.header == std::vector<std::string>{"0", "0.5", "1"});
  REQUIRE(table.rows.size() == 4);
  CHECK(std::stod(table.rows[2][1]) == sample.values(2, 1));
  std::filesystem::remove(path);
}
