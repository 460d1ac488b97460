#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gpctest/harness.hpp"
#include "gpctest/matrix.hpp"
#include "gpctest/process_models.hpp"
#include "gpctest/test_statistic.hpp"

namespace gpctest {

// Header `rep,n,m,c,k,statistic,p_value,m_d_hat,n_1,...,n_k`; one row per
// report. Missing statistic / p-value fields are left empty.
std::string format_reports_csv(std::span<const TestReport> reports);
void write_reports_csv(std::span<const TestReport> reports, const std::string& path);

// Header `c,p_value`; missing p-values are empty fields.
std::string format_curve_csv(const PValueCurve& curve);
void write_curve_csv(const PValueCurve& curve, const std::string& path);

// Header row of column indices, then one observation per row.
void write_sample_csv(const Matrix& data, const std::string& path);
// First row holds the grid points, then one path per row.
void write_process_csv(const ProcessSample& sample, const std::string& path);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::string& path);

// Numeric dataset from a headered CSV (the header row is skipped).
Matrix read_dataset_csv(const std::string& path);

enum class PlotStyle { QuantilePlot, PValueCurve };

// Quantile plot: one <circle> per point and the diagonal reference line.
std::string format_quantile_plot_svg(std::span<const std::pair<double, double>> points, const std::string& title);
// P-value curve: polyline and markers over present values, horizontal 0.05 line.
std::string format_curve_svg(const PValueCurve& curve, const std::string& title);
void write_text_file(const std::string& text, const std::string& path);

}  // namespace gpctest
