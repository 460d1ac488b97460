#include "gpctest/io.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <fstream>
#include <sstream>

#include "gpctest/errors.hpp"

namespace gpctest {
namespace {

std::string optional_field(const std::optional<double>& v) { return v ? fmt::format("{}", *v) : std::string(); }

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

std::string format_reports_csv(std::span<const TestReport> reports) {
  std::size_t k = 0;
  for (const auto& r : reports) k = std::max(k, r.counts.counts.size());
  std::string out = "rep,n,m,c,k,statistic,p_value,m_d_hat";
  for (std::size_t j = 1; j <= k; ++j) out += fmt::format(",n_{}", j);
  out += '\n';
  for (const auto& r : reports) {
    out += fmt::format("{},{},{},{},{},{},{},{}", r.params.rep, r.params.n, r.params.m, r.params.c, r.params.k,
                       optional_field(r.statistic), optional_field(r.p_value), r.m_d_hat.clipped);
    for (std::size_t j = 0; j < k; ++j) {
      out += ',';
      if (j < r.counts.counts.size()) out += fmt::format("{}", r.counts.counts[j]);
    }
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& text, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError(fmt::format("cannot open '{}' for writing", path));
  file << text;
  if (!file) throw IoError(fmt::format("failed writing '{}'", path));
}

void write_reports_csv(std::span<const TestReport> reports, const std::string& path) {
  write_text_file(format_reports_csv(reports), path);
}

std::string format_curve_csv(const PValueCurve& curve) {
  std::string out = "c,p_value\n";
  for (std::size_t i = 0; i < curve.thresholds.size(); ++i) {
    out += fmt::format("{},{}\n", curve.thresholds[i], optional_field(curve.p_values[i]));
  }
  return out;
}

void write_curve_csv(const PValueCurve& curve, const std::string& path) {
  write_text_file(format_curve_csv(curve), path);
}

void write_sample_csv(const Matrix& data, const std::string& path) {
  std::string out;
  for (std::size_t r = 0; r < data.cols(); ++r) out += fmt::format("{}{}", r ? "," : "", r);
  out += '\n';
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const auto row = data.row(i);
    for (std::size_t r = 0; r < row.size(); ++r) out += fmt::format("{}{}", r ? "," : "", row[r]);
    out += '\n';
  }
  write_text_file(out, path);
}

void write_process_csv(const ProcessSample& sample, const std::string& path) {
  std::string out;
  const auto grid = sample.grid.points();
  for (std::size_t r = 0; r < grid.size(); ++r) out += fmt::format("{}{}", r ? "," : "", grid[r]);
  out += '\n';
  for (std::size_t i = 0; i < sample.values.rows(); ++i) {
    const auto row = sample.values.row(i);
    for (std::size_t r = 0; r < row.size(); ++r) out += fmt::format("{}{}", r ? "," : "", row[r]);
    out += '\n';
  }
  write_text_file(out, path);
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      table.header = split_line(line);
      first = false;
    } else {
      table.rows.push_back(split_line(line));
    }
  }
  return table;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError(fmt::format("cannot open '{}' for reading", path));
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_csv(buffer.str());
}

Matrix read_dataset_csv(const std::string& path) {
  const CsvTable table = read_csv(path);
  if (table.rows.empty()) throw ConfigError(fmt::format("'{}' contains no observations", path));
  const std::size_t d = table.header.size();
  Matrix data(table.rows.size(), d);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    if (row.size() != d) {
      throw ConfigError(fmt::format("'{}' line {}: expected {} fields, found {}", path, i + 2, d, row.size()));
    }
    for (std::size_t r = 0; r < d; ++r) {
      try {
        std::size_t used = 0;
        data(i, r) = std::stod(row[r], &used);
        if (used != row[r].size()) throw std::invalid_argument(row[r]);
      } catch (const std::exception&) {
        throw ConfigError(fmt::format("'{}' line {}: '{}' is not a number", path, i + 2, row[r]));
      }
    }
  }
  return data;
}

// ---------------------------------------------------------------------------
// SVG: unit square data coordinates mapped into a 480 x 480 plot area.

namespace {

constexpr double kMargin = 50.0;
constexpr double kSide = 400.0;

double sx(double x) { return kMargin + kSide * x; }
double sy(double y) { return kMargin + kSide * (1.0 - y); }

std::string svg_open(const std::string& title, const std::string& xlabel) {
  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">\n",
      kSide + 2 * kMargin);
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"14\" text-anchor=\"middle\">{}</text>\n",
                     kMargin + kSide / 2, kMargin / 2, title);
  out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
                     kMargin, kMargin, kSide, kSide);
  for (int i = 0; i <= 4; ++i) {
    const double v = i / 4.0;
    out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"middle\">{}</text>\n", sx(v),
                       kMargin + kSide + 15, v);
    out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"end\">{}</text>\n", kMargin - 5,
                       sy(v) + 3, v);
  }
  out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
                     kMargin + kSide / 2, kMargin + kSide + 35, xlabel);
  return out;
}

}  // namespace

std::string format_quantile_plot_svg(std::span<const std::pair<double, double>> points, const std::string& title) {
  std::string out = svg_open(title, "j/(R+1)");
  out += fmt::format("<line class=\"reference\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"gray\"/>\n", sx(0),
                     sy(0), sx(1), sy(1));
  for (const auto& [x, y] : points) {
    out += fmt::format("<circle cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"1.5\" fill=\"black\"/>\n", sx(x),
                       sy(std::clamp(y, 0.0, 1.0)));
  }
  out += "</svg>\n";
  return out;
}

std::string format_curve_svg(const PValueCurve& curve, const std::string& title) {
  double c_max = 0.0;
  for (double c : curve.thresholds) c_max = std::max(c_max, c);
  const double x_scale = c_max > 0.0 ? 1.0 / c_max : 1.0;

  std::string out = svg_open(title, fmt::format("c (axis scaled to [0, {}])", c_max));
  out += fmt::format("<line class=\"reference\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"red\"/>\n", sx(0),
                     sy(0.05), sx(1), sy(0.05));
  std::string polyline;
  std::string markers;
  for (std::size_t i = 0; i < curve.thresholds.size(); ++i) {
    if (!curve.p_values[i]) continue;
    const double x = sx(curve.thresholds[i] * x_scale);
    const double y = sy(std::clamp(*curve.p_values[i], 0.0, 1.0));
    polyline += fmt::format("{:.3f},{:.3f} ", x, y);
    markers += fmt::format("<circle cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"2\" fill=\"black\"/>\n", x, y);
  }
  if (!polyline.empty()) {
    polyline.pop_back();
    out += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"black\"/>\n", polyline);
  }
  out += markers;
  out += "</svg>\n";
  return out;
}

}  // namespace gpctest
