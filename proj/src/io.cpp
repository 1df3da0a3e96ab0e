#include "srs/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <string_view>

namespace srs {
namespace {

std::string line_error(const std::filesystem::path& path, std::size_t line,
                       const std::string& what) {
  return path.string() + ":" + std::to_string(line) + ": " + what;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  return out;
}

void write_comments(std::ostream& out, const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << "# " << c << '\n';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool skip_line(std::string_view line) {
  line = trim(line);
  return line.empty() || line.front() == '#';
}

template <typename T>
bool parse_number(std::string_view field, T& value) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  if (field.empty()) return false;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  return ec == std::errc() && ptr == field.data() + field.size();
}

// Lines holding one integer each.
std::vector<long long> load_integer_lines(const std::filesystem::path& path,
                                          std::vector<std::size_t>& line_numbers) {
  auto in = open_in(path);
  std::vector<long long> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    long long v = 0;
    if (!parse_number(std::string_view(line), v)) {
      throw Error(ErrorKind::ParseError,
                  line_error(path, line_no, "expected an integer, got '" + line + "'"));
    }
    values.push_back(v);
    line_numbers.push_back(line_no);
  }
  return values;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

DataMatrix load_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::vector<double> values;
  Index cols = -1;
  Index rows = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    std::string_view rest(line);
    Index fields = 0;
    while (true) {
      const auto comma = rest.find(',');
      const auto field = rest.substr(0, comma);
      double v = 0.0;
      if (!parse_number(field, v)) {
        throw Error(ErrorKind::ParseError,
                    line_error(path, line_no,
                               "bad number '" + std::string(trim(field)) + "'"));
      }
      values.push_back(v);
      ++fields;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (cols < 0) {
      cols = fields;
    } else if (fields != cols) {
      throw Error(ErrorKind::ShapeError,
                  line_error(path, line_no,
                             "row has " + std::to_string(fields) + " fields, expected " +
                                 std::to_string(cols)));
    }
    ++rows;
  }
  if (rows == 0) throw Error(ErrorKind::ShapeError, path.string() + ": no data rows");
  DataMatrix d(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) d(i, j) = values[static_cast<std::size_t>(i * cols + j)];
  }
  validate(d);
  return d;
}

void save_csv(const DataMatrix& d, const std::filesystem::path& path,
              const std::vector<std::string>& comments) {
  auto out = open_out(path);
  write_comments(out, comments);
  std::string line;
  for (Index i = 0; i < d.rows(); ++i) {
    line.clear();
    for (Index j = 0; j < d.cols(); ++j) {
      if (j > 0) line += ',';
      line += format_double(d(i, j));
    }
    line += '\n';
    out << line;
  }
  if (!out) throw Error(ErrorKind::IoError, "failed writing " + path.string());
}

ClusterLabels load_labels(const std::filesystem::path& path,
                          std::optional<int> cluster_count) {
  std::vector<std::size_t> line_numbers;
  const auto values = load_integer_lines(path, line_numbers);
  ClusterLabels out;
  long long max_id = -1;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const long long v = values[i];
    if (v < 0 || (cluster_count && v >= *cluster_count) || v > INT32_MAX - 1) {
      throw Error(ErrorKind::ParseError,
                  line_error(path, line_numbers[i],
                             "cluster id " + std::to_string(v) + " out of range"));
    }
    max_id = std::max(max_id, v);
    out.labels.push_back(static_cast<int>(v));
  }
  out.count = cluster_count ? *cluster_count : static_cast<int>(max_id + 1);
  return out;
}

void save_labels(const ClusterLabels& labels, const std::filesystem::path& path,
                 const std::vector<std::string>& comments) {
  auto out = open_out(path);
  write_comments(out, comments);
  for (int label : labels.labels) out << label << '\n';
  if (!out) throw Error(ErrorKind::IoError, "failed writing " + path.string());
}

std::vector<Index> load_indices(const std::filesystem::path& path) {
  std::vector<std::size_t> line_numbers;
  const auto values = load_integer_lines(path, line_numbers);
  std::vector<Index> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0) {
      throw Error(ErrorKind::ParseError,
                  line_error(path, line_numbers[i], "negative column index"));
    }
    out.push_back(static_cast<Index>(values[i]));
  }
  return out;
}

void save_indices(const std::vector<Index>& indices, const std::filesystem::path& path,
                  const std::vector<std::string>& comments) {
  auto out = open_out(path);
  write_comments(out, comments);
  for (Index i : indices) out << i << '\n';
  if (!out) throw Error(ErrorKind::IoError, "failed writing " + path.string());
}

void save_indices(const SketchResult& sketch, const std::filesystem::path& path,
                  const std::vector<std::string>& comments) {
  save_indices(sketch.indices, path, comments);
}

}  // namespace srs
