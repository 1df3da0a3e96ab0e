#pragma once

#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include "srs/matrix.hpp"
#include "srs/rng.hpp"

namespace srs {

/// Two clusters on arcs of the unit circle. Arc i covers the angles
/// [center_i - tau_i / 2, center_i + tau_i / 2].
struct ArcSpec {
  double tau1 = std::numbers::pi / 2;
  double tau2 = std::numbers::pi / 4;
  double center1 = 0.0;
  double center2 = std::numbers::pi / 2;
  Index n1 = 1000;
  Index n2 = 1000;
};

/// BadArcLengths unless tau1, tau2 > 0 and tau1 + tau2 < pi. ArcOverlap when
/// the arcs intersect each other or each other's antipodal image.
void validate(const ArcSpec& spec);

/// Whether the closed arcs, or one arc and the antipodal image of the
/// other, share a point.
bool arcs_overlap(const ArcSpec& spec);

struct LabeledData {
  DataMatrix data;
  ClusterLabels labels;
};

/// Unit points with angles uniform on each arc. Cluster 0 first.
LabeledData gen_arc_clusters(const ArcSpec& spec, Rng& rng);

struct SubspaceSpec {
  Index ambient = 100;
  std::vector<Index> dims;
  std::vector<Index> populations;
  std::uint64_t seed = 0;
};

/// s subspaces of dimension r / s each. BadDims unless s divides r.
SubspaceSpec homogeneous_subspaces(Index ambient, Index r, Index s,
                                   std::vector<Index> populations,
                                   std::uint64_t seed);

void validate(const SubspaceSpec& spec);

/// Union of random linear subspaces. Each basis is an orthonormalized
/// Gaussian matrix; each point is the basis times a uniform point on the
/// unit sphere of the subspace, so columns have unit norm. Clusters are
/// stored contiguously in spec order.
LabeledData gen_union_subspaces(const SubspaceSpec& spec, Rng& rng);
LabeledData gen_union_subspaces(const SubspaceSpec& spec);

/// Angle of each column of a 2 x N matrix, in (-pi, pi].
std::vector<double> column_angles(const DataMatrix& d);

}  // namespace srs
