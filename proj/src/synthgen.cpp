#include "srs/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace srs {
namespace {

constexpr double kPi = std::numbers::pi;

// Distance between two directions of lines through the origin, in [0, pi/2].
double axial_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), kPi);
  return std::min(d, kPi - d);
}

}  // namespace

bool arcs_overlap(const ArcSpec& spec) {
  // Arc 1 meets arc 2 or its antipodal image exactly when the two arcs meet
  // as sets of lines, i.e. modulo pi.
  return axial_distance(spec.center1, spec.center2) <= (spec.tau1 + spec.tau2) / 2;
}

void validate(const ArcSpec& spec) {
  if (!(spec.tau1 > 0.0 && spec.tau2 > 0.0) || !(spec.tau1 + spec.tau2 < kPi)) {
    throw Error(ErrorKind::BadArcLengths,
                "need tau1, tau2 > 0 and tau1 + tau2 < pi (got " + std::to_string(spec.tau1) +
                    ", " + std::to_string(spec.tau2) + ")");
  }
  if (!std::isfinite(spec.center1) || !std::isfinite(spec.center2)) {
    throw Error(ErrorKind::InvalidArgument, "arc centers must be finite");
  }
  if (arcs_overlap(spec)) {
    throw Error(ErrorKind::ArcOverlap,
                "arcs intersect each other or each other's antipodal image");
  }
  if (spec.n1 < 1 || spec.n2 < 1) {
    throw Error(ErrorKind::InvalidArgument, "arc populations must be >= 1");
  }
}

LabeledData gen_arc_clusters(const ArcSpec& spec, Rng& rng) {
  validate(spec);
  LabeledData out;
  out.data.resize(2, spec.n1 + spec.n2);
  out.labels.count = 2;
  out.labels.labels.reserve(static_cast<std::size_t>(spec.n1 + spec.n2));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Index j = 0;
  const auto emit = [&](double center, double tau, Index count, int label) {
    for (Index i = 0; i < count; ++i, ++j) {
      const double angle = center - tau / 2 + tau * u(rng);
      out.data(0, j) = std::cos(angle);
      out.data(1, j) = std::sin(angle);
      out.labels.labels.push_back(label);
    }
  };
  emit(spec.center1, spec.tau1, spec.n1, 0);
  emit(spec.center2, spec.tau2, spec.n2, 1);
  return out;
}

SubspaceSpec homogeneous_subspaces(Index ambient, Index r, Index s,
                                   std::vector<Index> populations, std::uint64_t seed) {
  if (s < 1 || r < 1 || r % s != 0) {
    throw Error(ErrorKind::BadDims,
                "r = " + std::to_string(r) + " is not a positive multiple of s = " +
                    std::to_string(s));
  }
  SubspaceSpec spec;
  spec.ambient = ambient;
  spec.dims.assign(static_cast<std::size_t>(s), r / s);
  spec.populations = std::move(populations);
  spec.seed = seed;
  return spec;
}

void validate(const SubspaceSpec& spec) {
  if (spec.ambient < 1) throw Error(ErrorKind::BadDims, "ambient dimension must be >= 1");
  if (spec.dims.empty()) throw Error(ErrorKind::BadDims, "need at least one subspace");
  if (spec.dims.size() != spec.populations.size()) {
    throw Error(ErrorKind::BadDims, "dims and populations differ in length");
  }
  for (std::size_t i = 0; i < spec.dims.size(); ++i) {
    if (spec.dims[i] < 1 || spec.dims[i] > spec.ambient) {
      throw Error(ErrorKind::BadDims,
                  "subspace " + std::to_string(i) + " has dimension " +
                      std::to_string(spec.dims[i]) + " outside [1, " +
                      std::to_string(spec.ambient) + "]");
    }
    if (spec.populations[i] < 1) {
      throw Error(ErrorKind::BadDims, "subspace " + std::to_string(i) + " has no points");
    }
  }
}

LabeledData gen_union_subspaces(const SubspaceSpec& spec, Rng& rng) {
  validate(spec);
  Index total = 0;
  for (Index n : spec.populations) total += n;

  LabeledData out;
  out.data.resize(spec.ambient, total);
  out.labels.count = static_cast<int>(spec.dims.size());
  out.labels.labels.reserve(static_cast<std::size_t>(total));

  std::normal_distribution<double> normal(0.0, 1.0);
  Index j = 0;
  for (std::size_t i = 0; i < spec.dims.size(); ++i) {
    const Index dim = spec.dims[i];
    Eigen::MatrixXd gaussian(spec.ambient, dim);
    for (Index c = 0; c < dim; ++c) {
      for (Index r = 0; r < spec.ambient; ++r) gaussian(r, c) = normal(rng);
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian);
    const Eigen::MatrixXd basis =
        qr.householderQ() * Eigen::MatrixXd::Identity(spec.ambient, dim);

    Eigen::VectorXd g(dim);
    for (Index k = 0; k < spec.populations[i]; ++k, ++j) {
      double norm = 0.0;
      do {
        for (Index c = 0; c < dim; ++c) g(c) = normal(rng);
        norm = g.norm();
      } while (norm == 0.0);
      out.data.col(j) = basis * (g / norm);
      out.labels.labels.push_back(static_cast<int>(i));
    }
  }
  return out;
}

LabeledData gen_union_subspaces(const SubspaceSpec& spec) {
  Rng rng = make_rng(spec.seed);
  return gen_union_subspaces(spec, rng);
}

std::vector<double> column_angles(const DataMatrix& d) {
  if (d.rows() != 2) throw Error(ErrorKind::ShapeError, "angles need 2-D points");
  std::vector<double> out(static_cast<std::size_t>(d.cols()));
  for (Index j = 0; j < d.cols(); ++j) out[static_cast<std::size_t>(j)] = std::atan2(d(1, j), d(0, j));
  return out;
}

}  // namespace srs
