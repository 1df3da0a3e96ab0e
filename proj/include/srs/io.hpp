#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "srs/matrix.hpp"

namespace srs {

// Text formats: comma separated, no header, LF line endings. Lines starting
// with '#' are comments and are skipped by every loader. Decimals are written
// in the shortest form that round-trips (at most 17 significant digits).

DataMatrix load_csv(const std::filesystem::path& path);
void save_csv(const DataMatrix& d, const std::filesystem::path& path,
              const std::vector<std::string>& comments = {});

/// One id per line. With `cluster_count`, ids >= cluster_count are a
/// ParseError; otherwise the count is max id + 1.
ClusterLabels load_labels(const std::filesystem::path& path,
                          std::optional<int> cluster_count = std::nullopt);
void save_labels(const ClusterLabels& labels, const std::filesystem::path& path,
                 const std::vector<std::string>& comments = {});

std::vector<Index> load_indices(const std::filesystem::path& path);
void save_indices(const SketchResult& sketch, const std::filesystem::path& path,
                  const std::vector<std::string>& comments = {});
void save_indices(const std::vector<Index>& indices,
                  const std::filesystem::path& path,
                  const std::vector<std::string>& comments = {});

/// Shortest round-trip decimal form of `value`.
std::string format_double(double value);

}  // namespace srs
