#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "srs/bounds.hpp"
#include "srs/matrix.hpp"
#include "srs/report.hpp"
#include "srs/rng.hpp"
#include "srs/samplers.hpp"
#include "srs/synthgen.hpp"

namespace srs {

/// Runs body(trial) for trial in [0, trials) on a small thread pool. Each
/// body must only touch state owned by its trial.
void for_each_trial(int trials, const std::function<void(int)>& body);

/// Monte-Carlo estimate of the sphere regions where each cluster holds the
/// largest |<y, x_j>|. Draws T Gaussian directions; returns the fraction
/// owned by each cluster (ties to the lowest cluster id).
std::vector<double> estimate_region_areas(const DataMatrix& x,
                                          const ClusterLabels& labels,
                                          Index draws, Rng& rng);

/// Per-cluster frequencies over `draws` with-replacement draws of `method`
/// (srs_repl or ris_repl).
std::vector<double> empirical_sampling_probabilities(
    const DataMatrix& x, const ClusterLabels& labels, Index draws, Rng& rng,
    Method method = Method::srs_repl);

/// Per-cluster counts of a sketch.
std::vector<Index> cluster_counts(const std::vector<Index>& indices,
                                  const ClusterLabels& labels);

/// Numerical rank of the first n sampled columns for every n in the
/// ascending grid. One sketch of size max(grid) is drawn per trial (trial
/// seed = master_seed + trial), so the sketches at different n are nested.
/// Rows: per-trial ranks, then mean and median per n. Spatial methods are
/// run on normalize_columns(d).
ExperimentReport rank_curve(const DataMatrix& d, const SamplerSpec& spec,
                            const std::vector<Index>& n_grid, int trials,
                            std::uint64_t master_seed,
                            double rel_tol = kDefaultRankTolerance);

/// Per-method, per-cluster counts of an n-column sketch in each trial, then
/// the mean count per cluster. Rows carry x = n.
ExperimentReport coverage_experiment(const DataMatrix& d,
                                     const ClusterLabels& labels,
                                     const std::vector<SamplerSpec>& specs,
                                     Index n, int trials,
                                     std::uint64_t master_seed);

/// Mean over the clusters in `members` of the per-cluster mean rows.
double mean_coverage(const ExperimentReport& report, Method method,
                     const std::vector<int>& members);

/// Fraction of trials in which `n` with-replacement draws of `method`
/// contain at least m columns from every cluster.
double sufficiency_rate(const DataMatrix& x, const ClusterLabels& labels,
                        Method method, Index n, int m, int trials,
                        std::uint64_t master_seed);

struct EmpiricalBoundCheck {
  double bound = 0.0;
  Index n = 0;
  double success_rate = 0.0;
};

/// Draws ceil(lemma2_bound) uniform-index samples with replacement in each
/// trial. N2 and the populations fed to the bound come from the labels.
EmpiricalBoundCheck lemma2_empirical(const LabeledData& data, int m, double delta,
                                     double beta, int trials,
                                     std::uint64_t master_seed);

/// Same with with-replacement spatial sampling and lemma3_bound on the arc
/// lengths of `arcs`. `data` must be drawn from `arcs`.
EmpiricalBoundCheck lemma3_empirical(const ArcSpec& arcs, const LabeledData& data,
                                     int m, double delta, double beta, int trials,
                                     std::uint64_t master_seed);

struct KMeansDemo {
  int seeds = 0;
  int full_passes = 0;
  int sketch_passes = 0;
};

/// For each seed: k-means on the full data and on an n-column spatial
/// sketch (without replacement), then balanced_centers_check on both.
KMeansDemo kmeans_demo(const DataMatrix& d, const ClusterLabels& labels, int k,
                       Index sketch_n, int seeds, std::uint64_t master_seed,
                       int max_iters = 100, int restarts = 10);

}  // namespace srs
