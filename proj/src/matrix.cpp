#include "srs/matrix.hpp"

#include <cmath>
#include <string>

namespace srs {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroColumn: return "ZeroColumn";
    case ErrorKind::EmptySketch: return "EmptySketch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ShapeError: return "ShapeError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::TooManySamples: return "TooManySamples";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::ZeroMatrix: return "ZeroMatrix";
    case ErrorKind::RankDeficientK: return "RankDeficientK";
    case ErrorKind::BadTargetDim: return "BadTargetDim";
    case ErrorKind::ArcOverlap: return "ArcOverlap";
    case ErrorKind::BadArcLengths: return "BadArcLengths";
    case ErrorKind::BadDims: return "BadDims";
    case ErrorKind::BadBeta: return "BadBeta";
    case ErrorKind::BadArcs: return "BadArcs";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

std::vector<Index> ClusterLabels::populations() const {
  std::vector<Index> counts(static_cast<std::size_t>(count > 0 ? count : 0), 0);
  for (int label : labels) {
    if (label >= 0 && label < count) ++counts[static_cast<std::size_t>(label)];
  }
  return counts;
}

void ClusterLabels::validate(Index cols) const {
  if (cols >= 0 && size() != cols) {
    throw Error(ErrorKind::ShapeError,
                "labels have length " + std::to_string(size()) +
                    " but the matrix has " + std::to_string(cols) + " columns");
  }
  for (std::size_t j = 0; j < labels.size(); ++j) {
    if (labels[j] < 0 || labels[j] >= count) {
      throw Error(ErrorKind::InvalidArgument,
                  "label " + std::to_string(labels[j]) + " at position " +
                      std::to_string(j) + " outside [0, " +
                      std::to_string(count) + ")");
    }
  }
}

void validate(const DataMatrix& d) {
  if (d.rows() < 1 || d.cols() < 1) {
    throw Error(ErrorKind::ShapeError, "matrix must have at least one row and column");
  }
  if (!d.allFinite()) {
    throw Error(ErrorKind::InvalidArgument, "matrix has non-finite entries");
  }
}

DataMatrix gather_columns(const DataMatrix& d, const std::vector<Index>& indices) {
  DataMatrix out(d.rows(), static_cast<Index>(indices.size()));
  for (std::size_t i = 0; i < indices.size(); ++i) {
    out.col(static_cast<Index>(i)) = d.col(indices[i]);
  }
  return out;
}

DataMatrix normalize_columns(const DataMatrix& d) {
  DataMatrix x(d.rows(), d.cols());
  for (Index j = 0; j < d.cols(); ++j) {
    const double norm = d.col(j).norm();
    if (norm == 0.0) {
      throw Error(ErrorKind::ZeroColumn, "column " + std::to_string(j) + " is zero");
    }
    x.col(j) = d.col(j) / norm;
  }
  return x;
}

std::vector<Index> nonzero_columns(const DataMatrix& d) {
  std::vector<Index> kept;
  for (Index j = 0; j < d.cols(); ++j) {
    if (d.col(j).squaredNorm() != 0.0) kept.push_back(j);
  }
  return kept;
}

int numerical_rank(const DataMatrix& d, double rel_tol) {
  if (d.size() == 0) return 0;
  // Singular values are invariant under transposition; decompose the wide
  // orientation so the SVD works on the short side.
  Eigen::VectorXd sigma;
  if (d.rows() <= d.cols()) {
    sigma = Eigen::BDCSVD<Eigen::MatrixXd>(d).singularValues();
  } else {
    sigma = Eigen::BDCSVD<Eigen::MatrixXd>(d.transpose()).singularValues();
  }
  if (sigma.size() == 0 || sigma(0) == 0.0) return 0;
  const double threshold = rel_tol * sigma(0);
  int rank = 0;
  for (Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > threshold) ++rank;
  }
  return rank;
}

double approximation_error(const DataMatrix& d, const DataMatrix& c) {
  if (c.cols() == 0) throw Error(ErrorKind::EmptySketch, "sketch has no columns");
  if (c.rows() != d.rows()) {
    throw Error(ErrorKind::ShapeError,
                "sketch has " + std::to_string(c.rows()) + " rows, data has " +
                    std::to_string(d.rows()));
  }
  const double total = d.norm();
  if (total == 0.0) return 0.0;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(c);
  const Eigen::MatrixXd coeffs = qr.solve(d);
  return (d - c * coeffs).norm() / total;
}

}  // namespace srs
