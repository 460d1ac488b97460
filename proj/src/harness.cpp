#include "gpctest/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <fmt/format.h>
#include <mutex>
#include <thread>

#include "gpctest/errors.hpp"

namespace gpctest {

std::string ProcessModel::describe() const {
  return fmt::format("process(lambda={};d={})", lambda, grid.size());
}

void ExperimentConfig::validate() const {
  if (n == 0) throw ConfigError("n must be positive");
  if (k < 2) throw ConfigError("k must be >= 2");
  if (replications < 1) throw ConfigError("replications must be >= 1");
  if (thresholds.empty()) throw ConfigError("at least one threshold is required");
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    const double c = thresholds[i];
    if (!(c > 0.0 && c < 1.0)) throw ConfigError(fmt::format("threshold {} outside (0,1)", c));
    if (i > 0 && !(c > thresholds[i - 1])) throw ConfigError("threshold grid must be strictly increasing");
  }
  if (subset.mode() != SubsetSpec::Mode::Full) {
    try {
      subset.resolve(n);
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  }
  if (threads == 0) throw ConfigError("threads must be >= 1");
}

CountingScheme ExperimentConfig::scheme() const {
  if (std::holds_alternative<ProcessModel>(model) || subset.mode() != SubsetSpec::Mode::Full) {
    return {MarginMode::Empirical, subset};
  }
  return {MarginMode::Known, SubsetSpec::full()};
}

std::vector<double> threshold_grid(double first, double last, std::size_t steps) {
  if (steps == 0) throw ConfigError("threshold grid needs at least one step");
  if (steps == 1) return {first};
  std::vector<double> grid(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    grid[i] = first + (last - first) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  grid.back() = last;
  return grid;
}

std::vector<double> default_threshold_grid() { return threshold_grid(0.01, 0.60, 60); }

namespace {

// One comma-separated item: a value or a:b:steps.
std::vector<double> parse_threshold_item(const std::string& text) {
  auto to_double = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw ConfigError("");
      return v;
    } catch (const std::exception&) {
      throw ConfigError(fmt::format("invalid threshold specification '{}'", text));
    }
  };
  const auto first_colon = text.find(':');
  if (first_colon == std::string::npos) return {to_double(text)};
  const auto second_colon = text.find(':', first_colon + 1);
  if (second_colon == std::string::npos) {
    throw ConfigError(fmt::format("threshold grid '{}' must be a:b:steps", text));
  }
  const double a = to_double(text.substr(0, first_colon));
  const double b = to_double(text.substr(first_colon + 1, second_colon - first_colon - 1));
  const double steps = to_double(text.substr(second_colon + 1));
  if (!(steps >= 1.0) || steps != std::floor(steps)) {
    throw ConfigError(fmt::format("threshold grid '{}': steps must be a positive integer", text));
  }
  return threshold_grid(a, b, static_cast<std::size_t>(steps));
}

}  // namespace

std::vector<double> parse_thresholds(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const auto item = parse_threshold_item(text.substr(start, comma - start));
    out.insert(out.end(), item.begin(), item.end());
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw ConfigError(fmt::format("threshold specification '{}' repeats a value", text));
  }
  return out;
}

ExceedanceCounts count_with_scheme(const Matrix& data, double c, std::size_t k, const CountingScheme& scheme) {
  if (scheme.margins == MarginMode::Known) {
    if (scheme.subset.mode() == SubsetSpec::Mode::Full) return count_exceedances(data, c, k);
    // Known margins restricted to a prefix of rows.
    const std::size_t m = scheme.subset.resolve(data.rows());
    Matrix head(m, data.cols());
    std::copy_n(data.values().begin(), m * data.cols(), head.values().begin());
    ExceedanceCounts counts = count_exceedances(head, c, k);
    counts.n = data.rows();
    return counts;
  }
  return count_exceedances_empirical(data, c, k, scheme.subset);
}

TestReport run_test(const Matrix& data, double c, std::size_t k, const CountingScheme& scheme,
                    const WeightedChiSquareLaw& law) {
  TestReport report;
  report.counts = count_with_scheme(data, c, k, scheme);
  report.params.n = report.counts.n;
  report.params.m = report.counts.m;
  report.params.c = c;
  report.params.k = k;
  report.m_d_hat = estimate_extremal_coefficient(report.counts);
  try {
    const double t = t_statistic(report.counts);
    report.statistic = t;
    report.p_value = p_value(law, t);
  } catch (const DegenerateSampleError& e) {
    report.error = e.what();
  }
  return report;
}

TestReport test_dataset(const Matrix& data, double c, std::size_t k, const SubsetSpec& subset) {
  TestReport report = run_test(data, c, k, {MarginMode::Empirical, subset}, WeightedChiSquareLaw::null_law(k));
  report.params.family = "dataset";
  return report;
}

Matrix draw_dataset(const ExperimentConfig& config, std::size_t rep) {
  Rng rng = Rng::substream(config.seed, rep);
  if (const auto* copula = std::get_if<CopulaModel>(&config.model)) return copula->sample(config.n, rng);
  const auto& process = std::get<ProcessModel>(config.model);
  return sample_example_process(config.n, process.lambda, process.grid, rng).values;
}

std::vector<TestReport> run_replicated_test(const ExperimentConfig& config) {
  config.validate();
  const WeightedChiSquareLaw law = WeightedChiSquareLaw::null_law(config.k);
  const CountingScheme scheme = config.scheme();
  const std::string family = std::visit([](const auto& m) { return m.describe(); }, config.model);
  const std::size_t per_rep = config.thresholds.size();
  std::vector<TestReport> reports(config.replications * per_rep);

  auto run_one = [&](std::size_t rep) {
    const Matrix data = draw_dataset(config, rep);
    for (std::size_t ci = 0; ci < per_rep; ++ci) {
      TestReport report = run_test(data, config.thresholds[ci], config.k, scheme, law);
      report.params.rep = rep;
      report.params.family = family;
      report.params.seed = config.seed;
      reports[rep * per_rep + ci] = std::move(report);
    }
  };

  const unsigned threads = std::min<std::size_t>(config.threads, config.replications);
  if (threads <= 1) {
    for (std::size_t rep = 0; rep < config.replications; ++rep) run_one(rep);
    return reports;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t rep = next++; rep < config.replications; rep = next++) {
        try {
          run_one(rep);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = config.replications;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return reports;
}

std::vector<std::pair<double, double>> quantile_plot_points(std::vector<double> p_values) {
  std::sort(p_values.begin(), p_values.end());
  const double denom = static_cast<double>(p_values.size() + 1);
  std::vector<std::pair<double, double>> points(p_values.size());
  for (std::size_t j = 0; j < p_values.size(); ++j) {
    points[j] = {static_cast<double>(j + 1) / denom, p_values[j]};
  }
  return points;
}

PValueCurve pvalue_curve(const Matrix& data, std::span<const double> thresholds, std::size_t k,
                         const CountingScheme& scheme) {
  for (double c : thresholds) {
    if (!(c > 0.0 && c < 1.0)) throw ConfigError(fmt::format("threshold {} outside (0,1)", c));
  }
  const WeightedChiSquareLaw law = WeightedChiSquareLaw::null_law(k);
  PValueCurve curve;
  curve.thresholds.assign(thresholds.begin(), thresholds.end());
  curve.dataset_fingerprint = fingerprint(data);
  curve.p_values.reserve(thresholds.size());
  for (double c : thresholds) curve.p_values.push_back(run_test(data, c, k, scheme, law).p_value);
  return curve;
}

std::uint64_t fingerprint(const Matrix& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t word) {
    for (int b = 0; b < 8; ++b) {
      h ^= (word >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  mix(data.rows());
  mix(data.cols());
  for (double v : data.values()) mix(std::bit_cast<std::uint64_t>(v));
  return h;
}

std::vector<double> collect_p_values(std::span<const TestReport> reports, std::optional<double> c) {
  std::vector<double> out;
  for (const auto& r : reports) {
    if (c && r.params.c != *c) continue;
    if (r.p_value) out.push_back(*r.p_value);
  }
  return out;
}

double rejection_rate(std::span<const double> p_values, double level) {
  if (p_values.empty()) return 0.0;
  const auto rejected = std::count_if(p_values.begin(), p_values.end(), [level](double p) { return p < level; });
  return static_cast<double>(rejected) / static_cast<double>(p_values.size());
}

double ks_distance_uniform(std::vector<double> values) {
  if (values.empty()) return 1.0;
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double u = std::clamp(values[i], 0.0, 1.0);
    d = std::max({d, static_cast<double>(i + 1) / n - u, u - static_cast<double>(i) / n});
  }
  return d;
}

}  // namespace gpctest
