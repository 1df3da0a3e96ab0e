#include "srs/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "srs/kmeans.hpp"

namespace srs {
namespace {

constexpr Index kDirectionBlock = 512;

std::vector<double> frequencies(const std::vector<Index>& indices,
                                const ClusterLabels& labels) {
  const auto counts = cluster_counts(indices, labels);
  std::vector<double> out(counts.size(), 0.0);
  if (indices.empty()) return out;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    out[c] = static_cast<double>(counts[c]) / static_cast<double>(indices.size());
  }
  return out;
}

// Sampling inputs that do not change across trials.
struct PreparedSampler {
  SamplerSpec spec;
  const DataMatrix* source = nullptr;
  std::vector<double> probabilities;
};

PreparedSampler prepare(const DataMatrix& d, const DataMatrix* normalized,
                        const SamplerSpec& spec) {
  PreparedSampler out{spec, is_spatial(spec.method) ? normalized : &d, {}};
  if (spec.method == Method::norm) {
    out.probabilities = norm_probabilities(d, spec.norm_convention);
  } else if (spec.method == Method::leverage) {
    const Index k = spec.leverage_k ? *spec.leverage_k : numerical_rank(d);
    out.probabilities = leverage_probabilities(d, k);
  }
  return out;
}

std::vector<Index> draw(const PreparedSampler& sampler, Index n, Rng& rng) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "sample count must be >= 1");
  if (!sampler.probabilities.empty()) {
    return draw_with_probabilities(sampler.probabilities, n, rng);
  }
  SamplerSpec spec = sampler.spec;
  spec.n = n;
  return sample_columns(*sampler.source, spec, rng).indices;
}

}  // namespace

void for_each_trial(int trials, const std::function<void(int)>& body) {
  if (trials <= 0) return;
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int workers = static_cast<int>(std::min<unsigned>(hw, static_cast<unsigned>(trials)));
  if (workers == 1) {
    for (int t = 0; t < trials; ++t) body(t);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int t = next++; t < trials; t = next++) {
        try {
          body(t);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = trials;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<Index> cluster_counts(const std::vector<Index>& indices,
                                  const ClusterLabels& labels) {
  std::vector<Index> counts(static_cast<std::size_t>(labels.count), 0);
  for (Index j : indices) {
    ++counts[static_cast<std::size_t>(labels.labels.at(static_cast<std::size_t>(j)))];
  }
  return counts;
}

std::vector<double> estimate_region_areas(const DataMatrix& x, const ClusterLabels& labels,
                                          Index draws, Rng& rng) {
  labels.validate(x.cols());
  require_unit_columns(x);
  if (draws < 1) throw Error(ErrorKind::InvalidArgument, "need at least one direction");

  std::vector<Index> owner_counts(static_cast<std::size_t>(labels.count), 0);
  std::vector<double> best(static_cast<std::size_t>(labels.count));
  for (Index start = 0; start < draws; start += kDirectionBlock) {
    const Index len = std::min(kDirectionBlock, draws - start);
    const DataMatrix y = sample_gaussian_directions(len, x.rows(), rng);
    const Eigen::MatrixXd qt = x.transpose() * y.transpose();
    for (Index r = 0; r < len; ++r) {
      std::fill(best.begin(), best.end(), -1.0);
      for (Index j = 0; j < x.cols(); ++j) {
        auto& slot = best[static_cast<std::size_t>(labels.labels[static_cast<std::size_t>(j)])];
        slot = std::max(slot, std::abs(qt(j, r)));
      }
      const auto winner = std::max_element(best.begin(), best.end()) - best.begin();
      ++owner_counts[static_cast<std::size_t>(winner)];
    }
  }
  std::vector<double> out(owner_counts.size());
  for (std::size_t c = 0; c < out.size(); ++c) {
    out[c] = static_cast<double>(owner_counts[c]) / static_cast<double>(draws);
  }
  return out;
}

std::vector<double> empirical_sampling_probabilities(const DataMatrix& x,
                                                     const ClusterLabels& labels,
                                                     Index draws, Rng& rng, Method method) {
  labels.validate(x.cols());
  std::vector<Index> indices;
  if (method == Method::srs_repl) {
    indices = srs_with_replacement(x, draws, rng).indices;
  } else if (method == Method::ris_repl) {
    indices = ris(x, draws, true, rng).indices;
  } else {
    throw Error(ErrorKind::InvalidArgument,
                "sampling probabilities need srs_repl or ris_repl, got " +
                    std::string(method_name(method)));
  }
  return frequencies(indices, labels);
}

ExperimentReport rank_curve(const DataMatrix& d, const SamplerSpec& spec,
                            const std::vector<Index>& n_grid, int trials,
                            std::uint64_t master_seed, double rel_tol) {
  std::vector<Index> grid;
  for (Index n : n_grid) {
    if (n < 0) throw Error(ErrorKind::InvalidArgument, "grid entries must be >= 0");
    if (n == 0) continue;
    if (!grid.empty() && n <= grid.back()) {
      throw Error(ErrorKind::InvalidArgument, "grid must be strictly ascending");
    }
    grid.push_back(n);
  }
  if (grid.empty()) throw Error(ErrorKind::InvalidArgument, "empty sample grid");
  if (trials < 1) throw Error(ErrorKind::InvalidArgument, "need at least one trial");

  DataMatrix normalized;
  if (is_spatial(spec.method)) normalized = normalize_columns(d);
  const PreparedSampler sampler = prepare(d, &normalized, spec);
  const std::string method(method_name(spec.method));

  std::vector<std::vector<double>> ranks(static_cast<std::size_t>(trials));
  for_each_trial(trials, [&](int t) {
    Rng rng = make_rng(child_seed(master_seed, static_cast<std::uint64_t>(t)));
    const auto indices = draw(sampler, grid.back(), rng);
    auto& row = ranks[static_cast<std::size_t>(t)];
    for (Index n : grid) {
      const std::vector<Index> prefix(indices.begin(), indices.begin() + n);
      row.push_back(numerical_rank(gather_columns(d, prefix), rel_tol));
    }
  });

  ExperimentReport report;
  for (int t = 0; t < trials; ++t) {
    for (std::size_t g = 0; g < grid.size(); ++g) {
      report.add(t, method, static_cast<double>(grid[g]), -1,
                 ranks[static_cast<std::size_t>(t)][g]);
    }
  }
  for (std::size_t g = 0; g < grid.size(); ++g) {
    std::vector<double> column;
    for (const auto& row : ranks) column.push_back(row[g]);
    report.add(kMeanRow, method, static_cast<double>(grid[g]), -1, mean_of(column));
    report.add(kMedianRow, method, static_cast<double>(grid[g]), -1, median_of(column));
  }
  return report;
}

ExperimentReport coverage_experiment(const DataMatrix& d, const ClusterLabels& labels,
                                     const std::vector<SamplerSpec>& specs, Index n,
                                     int trials, std::uint64_t master_seed) {
  labels.validate(d.cols());
  if (trials < 1) throw Error(ErrorKind::InvalidArgument, "need at least one trial");
  DataMatrix normalized;
  const bool any_spatial = std::any_of(specs.begin(), specs.end(),
                                       [](const SamplerSpec& s) { return is_spatial(s.method); });
  if (any_spatial) normalized = normalize_columns(d);

  ExperimentReport report;
  const auto clusters = static_cast<std::size_t>(labels.count);
  for (const auto& spec : specs) {
    const PreparedSampler sampler = prepare(d, &normalized, spec);
    const std::string method(method_name(spec.method));
    std::vector<std::vector<Index>> counts(static_cast<std::size_t>(trials));
    for_each_trial(trials, [&](int t) {
      Rng rng = make_rng(child_seed(master_seed, static_cast<std::uint64_t>(t)));
      counts[static_cast<std::size_t>(t)] = cluster_counts(draw(sampler, n, rng), labels);
    });
    std::vector<double> sums(clusters, 0.0);
    for (int t = 0; t < trials; ++t) {
      for (std::size_t c = 0; c < clusters; ++c) {
        const auto value = static_cast<double>(counts[static_cast<std::size_t>(t)][c]);
        report.add(t, method, static_cast<double>(n), static_cast<int>(c), value);
        sums[c] += value;
      }
    }
    for (std::size_t c = 0; c < clusters; ++c) {
      report.add(kMeanRow, method, static_cast<double>(n), static_cast<int>(c),
                 sums[c] / trials);
    }
  }
  return report;
}

double mean_coverage(const ExperimentReport& report, Method method,
                     const std::vector<int>& members) {
  const std::string name(method_name(method));
  std::vector<double> values;
  for (const auto& row : report.rows) {
    if (row.trial == kMeanRow && row.method == name &&
        std::find(members.begin(), members.end(), row.cluster) != members.end()) {
      values.push_back(row.value);
    }
  }
  return mean_of(values);
}

double sufficiency_rate(const DataMatrix& x, const ClusterLabels& labels, Method method,
                        Index n, int m, int trials, std::uint64_t master_seed) {
  labels.validate(x.cols());
  if (method != Method::srs_repl && method != Method::ris_repl) {
    throw Error(ErrorKind::InvalidArgument, "sufficiency checks sample with replacement");
  }
  if (trials < 1) throw Error(ErrorKind::InvalidArgument, "need at least one trial");
  std::vector<char> success(static_cast<std::size_t>(trials), 0);
  for_each_trial(trials, [&](int t) {
    std::vector<Index> indices;
    if (n > 0) {
      Rng rng = make_rng(child_seed(master_seed, static_cast<std::uint64_t>(t)));
      indices = method == Method::srs_repl ? srs_with_replacement(x, n, rng).indices
                                           : ris(x, n, true, rng).indices;
    }
    const auto counts = cluster_counts(indices, labels);
    success[static_cast<std::size_t>(t)] =
        std::all_of(counts.begin(), counts.end(), [m](Index c) { return c >= m; });
  });
  return static_cast<double>(std::count(success.begin(), success.end(), 1)) / trials;
}

EmpiricalBoundCheck lemma2_empirical(const LabeledData& data, int m, double delta,
                                     double beta, int trials, std::uint64_t master_seed) {
  BoundParams p;
  p.m = m;
  p.delta = delta;
  p.beta = beta;
  p.n_total = static_cast<double>(data.data.cols());
  for (Index pop : data.labels.populations()) p.populations.push_back(static_cast<double>(pop));
  EmpiricalBoundCheck out;
  out.bound = lemma2_bound(p);
  out.n = static_cast<Index>(std::ceil(out.bound));
  out.success_rate =
      sufficiency_rate(data.data, data.labels, Method::ris_repl, out.n, m, trials, master_seed);
  return out;
}

EmpiricalBoundCheck lemma3_empirical(const ArcSpec& arcs, const LabeledData& data, int m,
                                     double delta, double beta, int trials,
                                     std::uint64_t master_seed) {
  BoundParams p;
  p.m = m;
  p.delta = delta;
  p.beta = beta;
  p.tau1 = arcs.tau1;
  p.tau2 = arcs.tau2;
  EmpiricalBoundCheck out;
  out.bound = lemma3_bound(p);
  out.n = static_cast<Index>(std::ceil(out.bound));
  out.success_rate =
      sufficiency_rate(data.data, data.labels, Method::srs_repl, out.n, m, trials, master_seed);
  return out;
}

KMeansDemo kmeans_demo(const DataMatrix& d, const ClusterLabels& labels, int k,
                       Index sketch_n, int seeds, std::uint64_t master_seed,
                       int max_iters, int restarts) {
  labels.validate(d.cols());
  const DataMatrix x = normalize_columns(d);
  std::vector<char> full(static_cast<std::size_t>(seeds), 0);
  std::vector<char> sketched(static_cast<std::size_t>(seeds), 0);
  for_each_trial(seeds, [&](int s) {
    Rng rng = make_rng(child_seed(master_seed, static_cast<std::uint64_t>(s)));
    const auto on_full = kmeans(d, k, max_iters, restarts, rng);
    full[static_cast<std::size_t>(s)] = balanced_centers_check(on_full.centers, d, labels);
    const auto sketch = srs_without_replacement(x, sketch_n, rng);
    const auto on_sketch = kmeans(gather_columns(d, sketch.indices), k, max_iters, restarts, rng);
    sketched[static_cast<std::size_t>(s)] = balanced_centers_check(on_sketch.centers, d, labels);
  });
  KMeansDemo out;
  out.seeds = seeds;
  out.full_passes = static_cast<int>(std::count(full.begin(), full.end(), 1));
  out.sketch_passes = static_cast<int>(std::count(sketched.begin(), sketched.end(), 1));
  return out;
}

}  // namespace srs
