// gpctest: command-line front end for the generalized Pareto copula test.
//
//   gpctest simulate  replicated tests on a simulated copula family
//   gpctest curve     p-value as a function of c on one simulated dataset
//   gpctest test      test a CSV dataset with empirical margins
//   gpctest dist      query the limiting weighted chi-square law
//   gpctest process   replicated grid-based tests on the example process
//
// Exit codes: 0 success, 2 configuration error, 3 numeric failure.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gpctest/copula_models.hpp"
#include "gpctest/errors.hpp"
#include "gpctest/harness.hpp"
#include "gpctest/io.hpp"
#include "gpctest/limit_dist.hpp"

namespace {

using namespace gpctest;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct FamilyOptions {
  std::string family = "lemma1";
  double lambda = 0.0;
  double theta = 1.0;
  double rho = -0.5;
  std::size_t d = 2;
};

struct RunOptions {
  std::size_t n = 10000;
  std::string c = "0.2";
  std::size_t k = 2;
  std::size_t reps = 1000;
  std::string subset;
  std::uint64_t seed = 1;
  std::string out = "gpctest";
  unsigned threads = 1;
};

void add_family_options(CLI::App* cmd, FamilyOptions& f) {
  cmd->add_option("--family", f.family, "lemma1 | clayton | gumbel | normal")
      ->check(CLI::IsMember({"lemma1", "clayton", "gumbel", "normal"}));
  cmd->add_option("--lambda", f.lambda, "lemma1 parameter, |lambda| <= sqrt(2)/2");
  cmd->add_option("--theta", f.theta, "clayton / gumbel parameter");
  cmd->add_option("--rho", f.rho, "normal copula: common off-diagonal correlation in (-1, 0)");
  cmd->add_option("--d", f.d, "dimension for clayton / gumbel / normal");
}

void add_run_options(CLI::App* cmd, RunOptions& r, bool replicated) {
  cmd->add_option("--n", r.n, "sample size");
  cmd->add_option("--c", r.c, "threshold c: a value, a grid a:b:steps, or a comma list of either");
  cmd->add_option("--k", r.k, "number of exceedance levels (>= 2)");
  cmd->add_option("--subset", r.subset, "full | auto | m=<int>");
  cmd->add_option("--seed", r.seed, "64-bit seed");
  cmd->add_option("--out", r.out, "output path prefix");
  if (replicated) {
    cmd->add_option("--reps", r.reps, "replications");
    cmd->add_option("--threads", r.threads, "worker threads");
  }
}

CopulaModel make_model(const FamilyOptions& f) {
  if (f.family == "lemma1") return CopulaModel::lemma_one(f.lambda);
  if (f.family == "clayton") return CopulaModel::clayton(f.theta, f.d);
  if (f.family == "gumbel") return CopulaModel::gumbel(f.theta, f.d);
  return CopulaModel::normal(equicorrelation(f.d, f.rho));
}

SubsetSpec subset_or(const std::string& text, SubsetSpec fallback) {
  return text.empty() ? fallback : SubsetSpec::parse(text);
}

void write_quantile_plots(const ExperimentConfig& config, const std::vector<TestReport>& reports) {
  for (double c : config.thresholds) {
    const auto p = collect_p_values(reports, c);
    const auto points = quantile_plot_points(p);
    const std::string suffix = config.thresholds.size() == 1 ? "" : fmt::format("_c{}", c);
    const std::string family = std::visit([](const auto& m) { return m.describe(); }, config.model);
    write_text_file(format_quantile_plot_svg(points, fmt::format("{}  c={}  n={}", family, c, config.n)),
                    fmt::format("{}_quantile{}.svg", config.output, suffix));
  }
}

void print_summary(const ExperimentConfig& config, const std::vector<TestReport>& reports) {
  fmt::print("c,valid_reps,rejection_rate_0.05,ks_uniform,mean_m_d_hat\n");
  for (double c : config.thresholds) {
    const auto p = collect_p_values(reports, c);
    double md = 0.0;
    std::size_t count = 0;
    for (const auto& r : reports) {
      if (r.params.c != c) continue;
      md += r.m_d_hat.raw;
      ++count;
    }
    fmt::print("{},{},{:.4f},{:.4f},{:.4f}\n", c, p.size(), rejection_rate(p, 0.05), ks_distance_uniform(p),
               count ? md / static_cast<double>(count) : 0.0);
  }
}

int run_experiment(ExperimentConfig config) {
  const auto reports = run_replicated_test(config);
  write_reports_csv(reports, config.output + "_reports.csv");
  write_quantile_plots(config, reports);
  print_summary(config, reports);
  return 0;
}

int cmd_simulate(const FamilyOptions& f, const RunOptions& r) {
  ExperimentConfig config{.model = make_model(f),
                          .n = r.n,
                          .thresholds = parse_thresholds(r.c),
                          .k = r.k,
                          .replications = r.reps,
                          .subset = subset_or(r.subset, SubsetSpec::full()),
                          .seed = r.seed,
                          .output = r.out,
                          .threads = r.threads};
  return run_experiment(std::move(config));
}

int cmd_process(double lambda, std::size_t grid_d, const std::string& paths, const RunOptions& r) {
  ExperimentConfig config{.model = ProcessModel{lambda, GridSpec::equidistant(grid_d)},
                          .n = r.n,
                          .thresholds = parse_thresholds(r.c),
                          .k = r.k,
                          .replications = r.reps,
                          .subset = subset_or(r.subset, SubsetSpec::automatic()),
                          .seed = r.seed,
                          .output = r.out,
                          .threads = r.threads};
  if (!paths.empty()) {
    Rng rng = Rng::substream(config.seed, 0);
    write_process_csv(sample_example_process(config.n, lambda, GridSpec::equidistant(grid_d), rng), paths);
  }
  return run_experiment(std::move(config));
}

void emit_curve(const PValueCurve& curve, const std::string& title, const std::string& out) {
  write_curve_csv(curve, out + "_curve.csv");
  write_text_file(format_curve_svg(curve, title), out + "_curve.svg");
  fmt::print("{}", format_curve_csv(curve));
}

int cmd_curve(const FamilyOptions& f, const RunOptions& r, const std::string& save_data, bool c_given) {
  const CopulaModel model = make_model(f);
  const auto thresholds = c_given ? parse_thresholds(r.c) : default_threshold_grid();
  ExperimentConfig config{.model = model,
                          .n = r.n,
                          .thresholds = thresholds,
                          .k = r.k,
                          .replications = 1,
                          .subset = subset_or(r.subset, SubsetSpec::full()),
                          .seed = r.seed,
                          .output = r.out};
  config.validate();
  const Matrix data = draw_dataset(config, 0);
  if (!save_data.empty()) write_sample_csv(data, save_data);
  const PValueCurve curve = pvalue_curve(data, thresholds, r.k, config.scheme());
  emit_curve(curve, fmt::format("{}  n={}  seed={}", model.describe(), r.n, r.seed), r.out);
  return 0;
}

int cmd_test(const std::string& input, const RunOptions& r, bool c_given, bool out_given) {
  const Matrix data = read_dataset_csv(input);
  const SubsetSpec subset = subset_or(r.subset, SubsetSpec::automatic());
  const auto thresholds = c_given ? parse_thresholds(r.c) : std::vector<double>{0.1};
  if (thresholds.size() == 1) {
    TestReport report = test_dataset(data, thresholds.front(), r.k, subset);
    const TestReport reports[] = {report};
    const std::string csv = format_reports_csv(reports);
    if (out_given) write_text_file(csv, r.out + "_reports.csv");
    fmt::print("{}", csv);
    if (!report.error.empty()) fmt::print(stderr, "warning: {}\n", report.error);
    return 0;
  }
  const PValueCurve curve = pvalue_curve(data, thresholds, r.k, {MarginMode::Empirical, subset});
  emit_curve(curve, fmt::format("{}  subset={}", input, subset.describe()), r.out);
  return 0;
}

int cmd_dist(std::size_t k, const std::vector<double>& xs, std::optional<double> K, double s, double delta,
             double m_d, std::size_t mc, std::uint64_t seed) {
  const WeightedChiSquareLaw law = K ? WeightedChiSquareLaw::local_alternative(k, noncentrality(*K, s, delta, m_d, k))
                                     : WeightedChiSquareLaw::null_law(k);
  fmt::print("x,cdf,p_value{}\n", mc ? ",mc_cdf" : "");
  Rng rng(seed);
  for (double x : xs) {
    const double f = cdf(law, x);
    fmt::print("{},{:.12g},{:.12g}", x, f, std::max(0.0, 1.0 - f));
    if (mc) fmt::print(",{:.6f}", mc_cdf(law, x, mc, rng));
    fmt::print("\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chi-square type test for delta-neighborhoods of generalized Pareto copulas"};
  app.require_subcommand(1);

  FamilyOptions family;
  RunOptions run;

  auto* simulate = app.add_subcommand("simulate", "replicated tests on a simulated copula");
  add_family_options(simulate, family);
  add_run_options(simulate, run, true);

  auto* curve = app.add_subcommand("curve", "p-value curve over a threshold grid for one dataset");
  add_family_options(curve, family);
  add_run_options(curve, run, false);
  std::string save_data;
  curve->add_option("--save-data", save_data, "write the simulated dataset to this CSV");

  auto* test = app.add_subcommand("test", "test a CSV dataset (empirical margins)");
  std::string input;
  test->add_option("--input", input, "headered CSV, one observation per row")->required();
  add_run_options(test, run, false);

  auto* dist = app.add_subcommand("dist", "cdf / p-value of the limiting law");
  std::size_t dist_k = 2;
  std::vector<double> xs;
  std::optional<double> K;
  double s = 0.0, delta = 0.5, m_d = 1.0;
  std::size_t mc = 0;
  std::uint64_t dist_seed = 1;
  dist->add_option("--k", dist_k, "number of exceedance levels (>= 2)");
  dist->add_option("--x", xs, "evaluation points")->required();
  dist->add_option("--K", K, "local alternative: remainder constant K");
  dist->add_option("--s", s, "local alternative: limit of n c^(1+2 delta)");
  dist->add_option("--delta", delta, "local alternative: delta");
  dist->add_option("--md", m_d, "local alternative: extremal coefficient");
  dist->add_option("--mc", mc, "also report a Monte Carlo estimate from this many draws");
  dist->add_option("--seed", dist_seed, "seed for --mc");

  auto* process = app.add_subcommand("process", "replicated grid-based tests on the example process");
  double process_lambda = 0.0;
  std::size_t grid_d = 50;
  std::string paths;
  process->add_option("--lambda", process_lambda, "H_lambda parameter of the process");
  process->add_option("--grid-d", grid_d, "number of equidistant grid points");
  process->add_option("--paths", paths, "export the first replication's paths to this CSV");
  add_run_options(process, run, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(family, run);
    if (curve->parsed()) return cmd_curve(family, run, save_data, curve->count("--c") > 0);
    if (test->parsed()) return cmd_test(input, run, test->count("--c") > 0, test->count("--out") > 0);
    if (dist->parsed()) return cmd_dist(dist_k, xs, K, s, delta, m_d, mc, dist_seed);
    if (process->parsed()) return cmd_process(process_lambda, grid_d, paths, run);
  } catch (const NumericError& e) {
    fmt::print(stderr, "numeric failure: {}\n", e.what());
    return kExitNumeric;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitConfig;
  }
  return kExitConfig;
}
