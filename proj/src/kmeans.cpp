#include "srs/kmeans.hpp"

#include <limits>
#include <numeric>
#include <string>

namespace srs {
namespace {

Index nearest(const Eigen::VectorXd& point, const DataMatrix& candidates, double* dist = nullptr) {
  Index best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (Index c = 0; c < candidates.cols(); ++c) {
    const double dd = (candidates.col(c) - point).squaredNorm();
    if (dd < best_dist) {
      best_dist = dd;
      best = c;
    }
  }
  if (dist) *dist = best_dist;
  return best;
}

KMeansResult lloyd(const DataMatrix& d, int k, int max_iters, Rng& rng) {
  const Index cols = d.cols();
  std::vector<Index> perm(static_cast<std::size_t>(cols));
  std::iota(perm.begin(), perm.end(), Index{0});
  KMeansResult run;
  run.centers.resize(d.rows(), k);
  for (Index i = 0; i < k; ++i) {
    std::uniform_int_distribution<Index> pick(i, cols - 1);
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(pick(rng))]);
    run.centers.col(i) = d.col(perm[static_cast<std::size_t>(i)]);
  }

  run.assignment.assign(static_cast<std::size_t>(cols), -1);
  for (int iter = 0; iter < max_iters; ++iter) {
    bool changed = false;
    for (Index j = 0; j < cols; ++j) {
      const int c = static_cast<int>(nearest(d.col(j), run.centers));
      if (run.assignment[static_cast<std::size_t>(j)] != c) {
        run.assignment[static_cast<std::size_t>(j)] = c;
        changed = true;
      }
    }
    if (!changed) break;
    DataMatrix sums = DataMatrix::Zero(d.rows(), k);
    std::vector<Index> counts(static_cast<std::size_t>(k), 0);
    for (Index j = 0; j < cols; ++j) {
      const int c = run.assignment[static_cast<std::size_t>(j)];
      sums.col(c) += d.col(j);
      ++counts[static_cast<std::size_t>(c)];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) {
        run.centers.col(c) = sums.col(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
      }
    }
  }

  run.inertia = 0.0;
  for (Index j = 0; j < cols; ++j) {
    double dist = 0.0;
    run.assignment[static_cast<std::size_t>(j)] = static_cast<int>(nearest(d.col(j), run.centers, &dist));
    run.inertia += dist;
  }
  return run;
}

}  // namespace

KMeansResult kmeans(const DataMatrix& d, int k, int max_iters, int restarts, Rng& rng) {
  if (k < 1 || k > d.cols()) {
    throw Error(ErrorKind::InvalidArgument,
                "k = " + std::to_string(k) + " must lie in [1, " + std::to_string(d.cols()) + "]");
  }
  if (max_iters < 1 || restarts < 1) {
    throw Error(ErrorKind::InvalidArgument, "max_iters and restarts must be >= 1");
  }
  KMeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    KMeansResult run = lloyd(d, k, max_iters, rng);
    if (run.inertia < best.inertia) best = std::move(run);
  }
  return best;
}

bool balanced_centers_check(const DataMatrix& centers, const DataMatrix& d,
                            const ClusterLabels& labels) {
  labels.validate(d.cols());
  if (centers.rows() != d.rows()) {
    throw Error(ErrorKind::ShapeError, "centers and data disagree on ambient dimension");
  }
  std::vector<char> owned(static_cast<std::size_t>(labels.count), 0);
  for (Index c = 0; c < centers.cols(); ++c) {
    const Index j = nearest(centers.col(c), d);
    owned[static_cast<std::size_t>(labels.labels[static_cast<std::size_t>(j)])] = 1;
  }
  for (char o : owned) {
    if (!o) return false;
  }
  return true;
}

}  // namespace srs
