#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "srs/error.hpp"

namespace srs {

using Index = Eigen::Index;

/// Data points are stored as columns: rows = ambient dimension, cols = count.
using DataMatrix = Eigen::MatrixXd;

/// Ground-truth cluster ids per column, used only for evaluation.
struct ClusterLabels {
  std::vector<int> labels;
  int count = 0;

  Index size() const { return static_cast<Index>(labels.size()); }
  /// Number of columns carrying each id.
  std::vector<Index> populations() const;
  /// Throws InvalidArgument when an id is outside [0, count) and ShapeError
  /// when `cols` >= 0 and the length differs from it.
  void validate(Index cols = -1) const;
};

/// Ordered column selection plus the selected columns.
struct SketchResult {
  std::vector<Index> indices;
  DataMatrix columns;
  std::string method;
  std::uint64_t seed = 0;
  bool with_replacement = false;
};

/// Throws ShapeError on an empty matrix and InvalidArgument on a non-finite
/// entry.
void validate(const DataMatrix& d);

/// Columns of `d` at `indices`, in order.
DataMatrix gather_columns(const DataMatrix& d, const std::vector<Index>& indices);

/// Scales every column to unit l2 norm. Throws ZeroColumn on an exactly zero
/// column.
DataMatrix normalize_columns(const DataMatrix& d);

/// Drops exactly-zero columns and returns the kept column indices.
std::vector<Index> nonzero_columns(const DataMatrix& d);

inline constexpr double kDefaultRankTolerance = 1e-8;

/// Number of singular values above rel_tol * sigma_max. 0 for a zero matrix.
int numerical_rank(const DataMatrix& d, double rel_tol = kDefaultRankTolerance);

/// Relative residual ||D - C C^+ D||_F / ||D||_F of projecting D onto
/// span(C). The projection is a column-pivoted QR least-squares solve.
/// Throws EmptySketch when C has no columns.
double approximation_error(const DataMatrix& d, const DataMatrix& c);

}  // namespace srs
