#include <doctest.h>

#include <cmath>
#include <numeric>

#include "srs/matrix.hpp"
#include "srs/synthgen.hpp"
#include "test_util.hpp"

using namespace srs;
using srs::test::gaussian_matrix;
using srs::test::low_rank_matrix;

namespace {

// Rank from the eigenvalues of the Gram matrix: sigma_i^2 = lambda_i.
int gram_rank(const DataMatrix& d, double rel_tol) {
  const Eigen::MatrixXd gram = d.rows() <= d.cols() ? Eigen::MatrixXd(d * d.transpose())
                                                    : Eigen::MatrixXd(d.transpose() * d);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
  const auto& lambda = eig.eigenvalues();
  const double top = lambda.maxCoeff();
  if (top <= 0.0) return 0;
  int rank = 0;
  for (Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) > rel_tol * rel_tol * top) ++rank;
  }
  return rank;
}

// Residual through an explicit orthonormal basis of span(C) from a full SVD.
double svd_projection_error(const DataMatrix& d, const DataMatrix& c) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  Index r = 0;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > 1e-12 * s(0)) ++r;
  }
  const Eigen::MatrixXd u = svd.matrixU().leftCols(r);
  return (d - u * (u.transpose() * d)).norm() / d.norm();
}

}  // namespace

TEST_CASE("normalize_columns scales each column to unit length") {
  DataMatrix d(2, 2);
  d << 3, 1, 4, 0;
  const DataMatrix x = normalize_columns(d);
  CHECK(x(0, 0) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(x(1, 0) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(x(0, 1) == 1.0);
  CHECK(x(1, 1) == 0.0);
}

TEST_CASE("normalize_columns rejects an exactly zero column") {
  DataMatrix d = DataMatrix::Ones(3, 4);
  d.col(2).setZero();
  try {
    (void)normalize_columns(d);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroColumn);
    CHECK(std::string(e.what()).find("column 2") != std::string::npos);
  }
}

TEST_CASE("normalize_columns is idempotent") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const DataMatrix d = gaussian_matrix(1 + trial % 7, 1 + trial % 5, rng) * (1.0 + trial);
    const DataMatrix once = normalize_columns(d);
    const DataMatrix twice = normalize_columns(once);
    CHECK((once - twice).cwiseAbs().maxCoeff() <= 1e-12);
    for (Index j = 0; j < once.cols(); ++j) CHECK(std::abs(once.col(j).norm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("nonzero_columns lists columns to keep") {
  DataMatrix d = DataMatrix::Ones(2, 4);
  d.col(1).setZero();
  CHECK(nonzero_columns(d) == std::vector<Index>{0, 2, 3});
}

TEST_CASE("numerical_rank on small cases") {
  CHECK(numerical_rank(DataMatrix::Identity(5, 5)) == 5);
  DataMatrix dup = DataMatrix::Zero(3, 2);
  dup(0, 0) = dup(0, 1) = 1.0;
  CHECK(numerical_rank(dup) == 1);
  CHECK(numerical_rank(DataMatrix::Zero(4, 3)) == 0);
}

TEST_CASE("numerical_rank agrees with the Gram eigenvalue oracle and is transpose invariant") {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const Index rows = 3 + trial % 9;
    const Index cols = 2 + (trial * 7) % 13;
    const Index rank = 1 + trial % std::min(rows, cols);
    const DataMatrix d = low_rank_matrix(rows, cols, rank, rng);
    CHECK(numerical_rank(d) == rank);
    CHECK(numerical_rank(d.transpose()) == rank);
    // The Gram route squares the condition number; 1e-6 keeps it meaningful.
    CHECK(gram_rank(d, 1e-6) == rank);
  }
}

TEST_CASE("numerical_rank of the balanced-coverage subspace data is 40") {
  std::vector<Index> pops(20);
  for (int i = 0; i < 20; ++i) pops[static_cast<std::size_t>(i)] = i < 10 ? 30 : 700;
  const auto data = gen_union_subspaces(homogeneous_subspaces(100, 40, 20, pops, 3));
  CHECK(numerical_rank(data.data) == 40);
  CHECK(gram_rank(data.data, 1e-6) == 40);
}

TEST_CASE("approximation_error examples") {
  Rng rng(2);
  const DataMatrix d = gaussian_matrix(6, 9, rng);
  CHECK(approximation_error(d, d) <= 1e-10);

  const DataMatrix eye = DataMatrix::Identity(2, 2);
  CHECK(approximation_error(eye, eye.leftCols(1)) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));

  const DataMatrix low = low_rank_matrix(8, 20, 3, rng);
  CHECK(approximation_error(low, low.leftCols(3)) < 1e-10);

  CHECK_ERROR_KIND(approximation_error(d, DataMatrix(6, 0)), ErrorKind::EmptySketch);
  CHECK_ERROR_KIND(approximation_error(d, DataMatrix::Ones(5, 2)), ErrorKind::ShapeError);
}

TEST_CASE("approximation_error matches an SVD projection and shrinks with nested sketches") {
  Rng rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    const Index rows = 4 + trial % 6;
    const Index cols = 6 + trial % 10;
    const DataMatrix d = trial % 2 ? gaussian_matrix(rows, cols, rng)
                                   : low_rank_matrix(rows, cols, 2 + trial % 3, rng);
    std::vector<Index> order(static_cast<std::size_t>(cols));
    std::iota(order.begin(), order.end(), Index{0});
    std::shuffle(order.begin(), order.end(), rng);
    double previous = 2.0;
    for (Index k = 1; k <= cols; ++k) {
      const DataMatrix c = gather_columns(d, {order.begin(), order.begin() + k});
      const double err = approximation_error(d, c);
      CHECK(err <= previous + 1e-10);
      CHECK(err >= 0.0);
      CHECK(err <= 1.0 + 1e-12);
      CHECK(err == doctest::Approx(svd_projection_error(d, c)).epsilon(1e-8).scale(1.0));
      previous = err;
    }
  }
}

TEST_CASE("ClusterLabels validation and populations") {
  ClusterLabels labels{{0, 1, 1, 2}, 3};
  CHECK(labels.populations() == std::vector<Index>{1, 2, 1});
  CHECK_NOTHROW(labels.validate(4));
  CHECK_ERROR_KIND(labels.validate(5), ErrorKind::ShapeError);
  labels.labels.push_back(3);
  CHECK_ERROR_KIND(labels.validate(), ErrorKind::InvalidArgument);
}
