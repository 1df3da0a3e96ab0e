#include "srs/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "srs/error.hpp"
#include "srs/io.hpp"

namespace srs {

void ExperimentReport::add(int trial, std::string method, double x, int cluster,
                           double value) {
  rows.push_back(ReportRow{trial, std::move(method), x, cluster, value});
}

std::optional<double> ExperimentReport::find(int trial, const std::string& method,
                                             double x, int cluster) const {
  for (const auto& row : rows) {
    if (row.trial == trial && row.method == method && row.x == x && row.cluster == cluster) {
      return row.value;
    }
  }
  return std::nullopt;
}

void ExperimentReport::write_csv(std::ostream& out) const {
  for (const auto& line : metadata) out << "# " << line << '\n';
  out << kReportHeader << '\n';
  for (const auto& row : rows) {
    if (row.trial == kMeanRow) {
      out << "mean";
    } else if (row.trial == kMedianRow) {
      out << "median";
    } else {
      out << row.trial;
    }
    out << ',' << row.method << ',' << format_double(row.x) << ',';
    if (row.cluster >= 0) out << row.cluster;
    out << ',' << format_double(row.value) << '\n';
  }
}

void ExperimentReport::save_csv(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  write_csv(out);
  if (!out) throw Error(ErrorKind::IoError, "failed writing " + path.string());
}

void ExperimentReport::save_svg(const std::filesystem::path& path,
                                const std::string& title) const {
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  bool per_cluster = false;
  for (const auto& row : rows) {
    if (row.trial == kMeanRow && row.cluster >= 0) per_cluster = true;
  }
  for (const auto& row : rows) {
    if (row.trial != kMeanRow) continue;
    const double x = per_cluster ? static_cast<double>(row.cluster) : row.x;
    series[row.method].emplace_back(x, row.value);
  }

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = 0.0, ymax = -std::numeric_limits<double>::infinity();
  for (auto& [name, points] : series) {
    std::sort(points.begin(), points.end());
    for (const auto& [x, y] : points) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (series.empty()) {
    xmin = 0;
    xmax = 1;
    ymax = 1;
  }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;

  constexpr double width = 640, height = 400, left = 60, right = 140, top = 40, bottom = 50;
  const auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (width - left - right); };
  const auto py = [&](double y) { return height - bottom - (y - ymin) / (ymax - ymin) * (height - top - bottom); };
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                  "#9467bd", "#8c564b", "#17becf"};

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
      << title << "</text>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << py(ymin) << "\" x2=\"" << width - right
      << "\" y2=\"" << py(ymin) << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << py(ymin) << "\" x2=\"" << left << "\" y2=\""
      << top << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << left << "\" y=\"" << height - bottom + 18 << "\" font-size=\"11\">"
      << format_double(xmin) << "</text>\n";
  svg << "<text x=\"" << width - right << "\" y=\"" << height - bottom + 18
      << "\" text-anchor=\"end\" font-size=\"11\">" << format_double(xmax) << "</text>\n";
  svg << "<text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\" font-size=\"12\">" << (per_cluster ? "cluster" : "x")
      << "</text>\n";
  svg << "<text x=\"" << left - 6 << "\" y=\"" << py(ymax) + 4
      << "\" text-anchor=\"end\" font-size=\"11\">" << format_double(ymax) << "</text>\n";
  svg << "<text x=\"" << left - 6 << "\" y=\"" << py(ymin) + 4
      << "\" text-anchor=\"end\" font-size=\"11\">" << format_double(ymin) << "</text>\n";

  std::size_t color = 0;
  for (const auto& [name, points] : series) {
    const char* stroke = palette[color % std::size(palette)];
    svg << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : points) svg << px(x) << ',' << py(y) << ' ';
    svg << "\"/>\n";
    svg << "<text x=\"" << width - right + 10 << "\" y=\"" << top + 16 * (color + 1)
        << "\" fill=\"" << stroke << "\" font-size=\"12\">" << name << "</text>\n";
    ++color;
  }
  svg << "</svg>\n";

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  out << svg.str();
}

double mean_of(const std::vector<double>& values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double median_of(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

}  // namespace srs
