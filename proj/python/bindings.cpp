#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <string>
#include <vector>

#include "gpctest/copula_models.hpp"
#include "gpctest/exceedance.hpp"
#include "gpctest/harness.hpp"
#include "gpctest/limit_dist.hpp"
#include "gpctest/process_models.hpp"
#include "gpctest/test_statistic.hpp"

namespace py = pybind11;
using namespace gpctest;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Matrix to_matrix(const Array& array) {
  if (array.ndim() != 2) throw py::value_error("expected a two-dimensional array");
  Matrix out(static_cast<std::size_t>(array.shape(0)), static_cast<std::size_t>(array.shape(1)));
  std::copy_n(array.data(), out.values().size(), out.values().begin());
  return out;
}

Array to_array(const Matrix& matrix) {
  Array out({matrix.rows(), matrix.cols()});
  std::copy(matrix.values().begin(), matrix.values().end(), out.mutable_data());
  return out;
}

ExceedanceCounts counts_from(std::vector<std::int64_t> counts, std::size_t m, double c, std::size_t d) {
  const std::size_t k = counts.size();
  return {std::move(counts), m, m, d, c, k};
}

WeightedChiSquareLaw law_for(std::size_t k, const std::vector<double>& noncentralities) {
  if (noncentralities.empty()) return WeightedChiSquareLaw::null_law(k);
  return WeightedChiSquareLaw::local_alternative(k, noncentralities);
}

py::dict report_dict(const TestReport& report) {
  py::dict out;
  out["statistic"] = report.statistic ? py::cast(*report.statistic) : py::none();
  out["p_value"] = report.p_value ? py::cast(*report.p_value) : py::none();
  out["m_d_hat"] = report.m_d_hat.clipped;
  out["counts"] = report.counts.counts;
  out["n"] = report.params.n;
  out["m"] = report.params.m;
  out["c"] = report.params.c;
  out["k"] = report.params.k;
  out["error"] = report.error;
  return out;
}

}  // namespace

PYBIND11_MODULE(_gpctest, m) {
  m.doc() = "Goodness-of-fit test for generalized Pareto copulas";

  m.def("h_lambda_cdf", &h_lambda_cdf, py::arg("u"), py::arg("lam"));
  m.def("f_lambda_cdf", &f_lambda_cdf, py::arg("x"), py::arg("lam"));
  m.def("dnorm_lemma1", [](double x1, double x2) { return dnorm_lemma1({x1, x2}); }, py::arg("x1"),
        py::arg("x2"));
  m.def("spectral_ratio_oracle", &spectral_ratio_oracle, py::arg("t"), py::arg("lam"));

  m.def(
      "sample_lemma1",
      [](std::size_t n, double lambda, std::uint64_t seed) {
        Rng rng(seed);
        return to_array(sample_lemma1(n, lambda, rng));
      },
      py::arg("n"), py::arg("lam"), py::arg("seed"));
  m.def(
      "sample_clayton",
      [](std::size_t n, std::size_t d, double theta, std::uint64_t seed) {
        Rng rng(seed);
        return to_array(sample_clayton(n, d, theta, rng));
      },
      py::arg("n"), py::arg("d"), py::arg("theta"), py::arg("seed"));
  m.def(
      "sample_gumbel",
      [](std::size_t n, std::size_t d, double theta, std::uint64_t seed) {
        Rng rng(seed);
        return to_array(sample_gumbel(n, d, theta, rng));
      },
      py::arg("n"), py::arg("d"), py::arg("theta"), py::arg("seed"));
  m.def(
      "sample_example_process",
      [](std::size_t n, double lambda, std::size_t d, std::uint64_t seed) {
        Rng rng(seed);
        return to_array(sample_example_process(n, lambda, GridSpec::equidistant(d), rng).values);
      },
      py::arg("n"), py::arg("lam"), py::arg("d"), py::arg("seed"),
      "Paths on the equidistant grid of d points in [0, 1], one row per path.");

  m.def(
      "count_exceedances",
      [](const Array& data, double c, std::size_t k, const std::string& subset) {
        const Matrix matrix = to_matrix(data);
        if (subset == "known") return count_exceedances(matrix, c, k).counts;
        return count_exceedances_empirical(matrix, c, k, SubsetSpec::parse(subset)).counts;
      },
      py::arg("data"), py::arg("c"), py::arg("k"), py::arg("subset") = "known",
      "Exceedance counts n_1..n_k. subset='known' uses the thresholds 1 - c/j on copula data; "
      "'full', 'auto' or 'm=<int>' use empirical thresholds counted on that prefix.");
  m.def(
      "t_statistic", [](std::vector<std::int64_t> counts) { return t_statistic(counts_from(counts, 1, 0.1, 2)); },
      py::arg("counts"));
  m.def(
      "estimate_extremal_coefficient",
      [](std::vector<std::int64_t> counts, std::size_t m, double c, std::size_t d) {
        return estimate_extremal_coefficient(counts_from(std::move(counts), m, c, d)).raw;
      },
      py::arg("counts"), py::arg("m"), py::arg("c"), py::arg("d") = 2);

  m.def("eigenvalues", &eigenvalues, py::arg("k"));
  m.def("noncentrality", &noncentrality, py::arg("K"), py::arg("s"), py::arg("delta"), py::arg("m_d"),
        py::arg("k"));
  m.def(
      "cdf", [](std::size_t k, double x, const std::vector<double>& mu) { return cdf(law_for(k, mu), x); },
      py::arg("k"), py::arg("x"), py::arg("noncentralities") = std::vector<double>{});
  m.def(
      "p_value", [](std::size_t k, double t) { return p_value(WeightedChiSquareLaw::null_law(k), t); },
      py::arg("k"), py::arg("t"));

  m.def(
      "test_dataset",
      [](const Array& data, double c, std::size_t k, const std::string& subset) {
        return report_dict(test_dataset(to_matrix(data), c, k, SubsetSpec::parse(subset)));
      },
      py::arg("data"), py::arg("c"), py::arg("k") = 2, py::arg("subset") = "auto");
  m.def("default_threshold_grid", &default_threshold_grid);
  m.def(
      "pvalue_curve",
      [](const Array& data, std::vector<double> thresholds, std::size_t k, const std::string& subset) {
        const CountingScheme scheme{MarginMode::Empirical, SubsetSpec::parse(subset)};
        std::vector<std::optional<double>> p = pvalue_curve(to_matrix(data), thresholds, k, scheme).p_values;
        return p;
      },
      py::arg("data"), py::arg("thresholds"), py::arg("k") = 2, py::arg("subset") = "auto",
      "p-values with empirical margins; None where the sample is degenerate.");
}
