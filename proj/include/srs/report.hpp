#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace srs {

/// One CSV record: trial, method, x, cluster, value. Aggregate rows use
/// the negative trial ids below and are written as "mean" / "median".
/// cluster < 0 means "not per-cluster" and is written as an empty field.
struct ReportRow {
  int trial = 0;
  std::string method;
  double x = 0.0;
  int cluster = -1;
  double value = 0.0;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

inline constexpr int kMeanRow = -1;
inline constexpr int kMedianRow = -2;

struct ExperimentReport {
  std::vector<std::string> metadata;
  std::vector<ReportRow> rows;

  void add(int trial, std::string method, double x, int cluster, double value);

  /// First row matching all keys.
  std::optional<double> find(int trial, const std::string& method, double x,
                             int cluster = -1) const;

  void write_csv(std::ostream& out) const;
  void save_csv(const std::filesystem::path& path) const;

  /// Line plot of the mean rows, value against x, one series per method
  /// (x = cluster id when the mean rows are per-cluster).
  void save_svg(const std::filesystem::path& path, const std::string& title) const;
};

inline constexpr const char* kReportHeader = "trial,method,x,cluster,value";

double mean_of(const std::vector<double>& values);
double median_of(std::vector<double> values);

}  // namespace srs
