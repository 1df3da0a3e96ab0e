#pragma once

#include <vector>

#include "srs/matrix.hpp"
#include "srs/rng.hpp"

namespace srs {

struct KMeansResult {
  DataMatrix centers;  // ambient x k
  std::vector<int> assignment;
  double inertia = 0.0;
};

/// Lloyd iterations started from k distinct random data columns; the best of
/// `restarts` runs by within-cluster sum of squares. A center whose cluster
/// empties keeps its previous position.
KMeansResult kmeans(const DataMatrix& d, int k, int max_iters, int restarts,
                    Rng& rng);

/// Each center is attributed to the ground-truth cluster of its nearest
/// column in `d`. True when every cluster owns at least one center.
bool balanced_centers_check(const DataMatrix& centers, const DataMatrix& d,
                            const ClusterLabels& labels);

}  // namespace srs
