#include "srs/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace srs {
namespace {

// Directions are applied in row blocks so Q = Phi X never has to be held in
// full; each selection step only reads its own row of Q.
constexpr Index kDirectionBlock = 256;

void check_count(Index n, Index available, bool with_replacement) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "sample count must be >= 1");
  if (!with_replacement && n > available) {
    throw Error(ErrorKind::TooManySamples,
                "requested " + std::to_string(n) + " columns without replacement from " +
                    std::to_string(available));
  }
}

SketchResult make_result(const DataMatrix& source, std::vector<Index> indices,
                         Method method) {
  SketchResult out;
  out.columns = gather_columns(source, indices);
  out.indices = std::move(indices);
  out.method = std::string(method_name(method));
  out.with_replacement = is_with_replacement(method);
  return out;
}

}  // namespace

std::string_view method_name(Method method) {
  switch (method) {
    case Method::srs: return "srs";
    case Method::srs_repl: return "srs_repl";
    case Method::ris: return "ris";
    case Method::ris_repl: return "ris_repl";
    case Method::norm: return "norm";
    case Method::leverage: return "leverage";
    case Method::volume: return "volume";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::srs, Method::srs_repl, Method::ris, Method::ris_repl,
                   Method::norm, Method::leverage, Method::volume}) {
    if (method_name(m) == name) return m;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown method '" + std::string(name) + "'");
}

bool is_with_replacement(Method method) {
  switch (method) {
    case Method::srs_repl:
    case Method::ris_repl:
    case Method::norm:
    case Method::leverage:
      return true;
    default:
      return false;
  }
}

bool is_spatial(Method method) {
  return method == Method::srs || method == Method::srs_repl;
}

DataMatrix sample_gaussian_directions(Index n, Index ambient, Rng& rng) {
  if (n < 1 || ambient < 1) {
    throw Error(ErrorKind::InvalidArgument, "direction matrix must be at least 1 x 1");
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  DataMatrix phi(n, ambient);
  for (Index i = 0; i < n; ++i) {
    for (Index k = 0; k < ambient; ++k) phi(i, k) = normal(rng);
  }
  return phi;
}

void require_unit_columns(const DataMatrix& x) {
  for (Index j = 0; j < x.cols(); ++j) {
    const double norm = x.col(j).norm();
    if (!(std::abs(norm - 1.0) <= kUnitNormTolerance)) {
      throw Error(ErrorKind::NotNormalized,
                  "column " + std::to_string(j) + " has norm " + std::to_string(norm) +
                      "; call normalize_columns first");
    }
  }
}

std::vector<Index> srs_select_without_replacement(const DataMatrix& x,
                                                  const DataMatrix& directions) {
  if (directions.cols() != x.rows()) {
    throw Error(ErrorKind::ShapeError, "directions and data disagree on ambient dimension");
  }
  const Index n = directions.rows();
  const Index cols = x.cols();
  check_count(n, cols, false);

  std::vector<char> taken(static_cast<std::size_t>(cols), 0);
  std::vector<Index> picked;
  picked.reserve(static_cast<std::size_t>(n));
  for (Index start = 0; start < n; start += kDirectionBlock) {
    const Index len = std::min(kDirectionBlock, n - start);
    // Column r of qt is row start + r of Q = Phi X.
    const Eigen::MatrixXd qt = x.transpose() * directions.middleRows(start, len).transpose();
    for (Index r = 0; r < len; ++r) {
      Index best = -1;
      double best_value = -1.0;
      for (Index j = 0; j < cols; ++j) {
        if (taken[static_cast<std::size_t>(j)]) continue;
        const double h = std::abs(qt(j, r));
        if (h > best_value) {
          best_value = h;
          best = j;
        }
      }
      taken[static_cast<std::size_t>(best)] = 1;
      picked.push_back(best);
    }
  }
  return picked;
}

std::vector<Index> srs_select_with_replacement(const DataMatrix& x,
                                               const DataMatrix& directions) {
  if (directions.cols() != x.rows()) {
    throw Error(ErrorKind::ShapeError, "directions and data disagree on ambient dimension");
  }
  const Index n = directions.rows();
  std::vector<Index> picked;
  picked.reserve(static_cast<std::size_t>(n));
  for (Index start = 0; start < n; start += kDirectionBlock) {
    const Index len = std::min(kDirectionBlock, n - start);
    const Eigen::MatrixXd qt = x.transpose() * directions.middleRows(start, len).transpose();
    for (Index r = 0; r < len; ++r) {
      Index best = 0;
      double best_value = -1.0;
      for (Index j = 0; j < qt.rows(); ++j) {
        const double h = std::abs(qt(j, r));
        if (h > best_value) {
          best_value = h;
          best = j;
        }
      }
      picked.push_back(best);
    }
  }
  return picked;
}

SketchResult srs_without_replacement(const DataMatrix& x, Index n, Rng& rng) {
  check_count(n, x.cols(), false);
  require_unit_columns(x);
  const DataMatrix phi = sample_gaussian_directions(n, x.rows(), rng);
  return make_result(x, srs_select_without_replacement(x, phi), Method::srs);
}

SketchResult srs_with_replacement(const DataMatrix& x, Index n, Rng& rng) {
  check_count(n, x.cols(), true);
  require_unit_columns(x);
  const DataMatrix phi = sample_gaussian_directions(n, x.rows(), rng);
  return make_result(x, srs_select_with_replacement(x, phi), Method::srs_repl);
}

SketchResult ris(const DataMatrix& d, Index n, bool with_replacement, Rng& rng) {
  const Index cols = d.cols();
  check_count(n, cols, with_replacement);
  std::vector<Index> indices;
  indices.reserve(static_cast<std::size_t>(n));
  if (with_replacement) {
    std::uniform_int_distribution<Index> pick(0, cols - 1);
    for (Index i = 0; i < n; ++i) indices.push_back(pick(rng));
    return make_result(d, std::move(indices), Method::ris_repl);
  }
  // Partial Fisher-Yates: the first n slots are a uniform ordered sample.
  std::vector<Index> perm(static_cast<std::size_t>(cols));
  std::iota(perm.begin(), perm.end(), Index{0});
  for (Index i = 0; i < n; ++i) {
    std::uniform_int_distribution<Index> pick(i, cols - 1);
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(pick(rng))]);
  }
  perm.resize(static_cast<std::size_t>(n));
  return make_result(d, std::move(perm), Method::ris);
}

std::vector<double> norm_probabilities(const DataMatrix& d, NormConvention convention) {
  std::vector<double> p(static_cast<std::size_t>(d.cols()));
  double total = 0.0;
  for (Index j = 0; j < d.cols(); ++j) {
    const double sq = d.col(j).squaredNorm();
    const double w = convention == NormConvention::squared ? sq : std::sqrt(sq);
    p[static_cast<std::size_t>(j)] = w;
    total += w;
  }
  if (total == 0.0) throw Error(ErrorKind::ZeroMatrix, "all columns are zero");
  for (auto& v : p) v /= total;
  return p;
}

SketchResult norm_sampling(const DataMatrix& d, Index n, Rng& rng,
                           NormConvention convention) {
  check_count(n, d.cols(), true);
  const auto p = norm_probabilities(d, convention);
  return make_result(d, draw_with_probabilities(p, n, rng), Method::norm);
}

std::vector<Index> draw_with_probabilities(const std::vector<double>& probabilities,
                                           Index n, Rng& rng) {
  std::discrete_distribution<Index> pick(probabilities.begin(), probabilities.end());
  std::vector<Index> indices(static_cast<std::size_t>(n));
  for (auto& i : indices) i = pick(rng);
  return indices;
}

std::vector<double> leverage_probabilities(const DataMatrix& d, Index k) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(d, Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  Index rank = 0;
  if (sigma.size() > 0 && sigma(0) > 0.0) {
    for (Index i = 0; i < sigma.size(); ++i) {
      if (sigma(i) > kDefaultRankTolerance * sigma(0)) ++rank;
    }
  }
  if (k < 1 || k > rank) {
    throw Error(ErrorKind::RankDeficientK,
                "k = " + std::to_string(k) + " but numerical rank is " + std::to_string(rank));
  }
  const Eigen::MatrixXd& v = svd.matrixV();
  std::vector<double> p(static_cast<std::size_t>(d.cols()));
  for (Index j = 0; j < d.cols(); ++j) {
    p[static_cast<std::size_t>(j)] = v.row(j).head(k).squaredNorm() / static_cast<double>(k);
  }
  return p;
}

SketchResult leverage_sampling(const DataMatrix& d, Index n, Index k, Rng& rng) {
  check_count(n, d.cols(), true);
  const auto p = leverage_probabilities(d, k);
  return make_result(d, draw_with_probabilities(p, n, rng), Method::leverage);
}

SketchResult volume_sampling(const DataMatrix& d, Index n, Rng& rng) {
  const Index cols = d.cols();
  check_count(n, cols, false);
  const double threshold = 1e-10 * d.norm();

  Eigen::MatrixXd residual = d;
  Eigen::MatrixXd basis(d.rows(), 0);
  std::vector<char> available(static_cast<std::size_t>(cols), 1);
  std::vector<double> weights(static_cast<std::size_t>(cols));
  std::vector<Index> picked;
  picked.reserve(static_cast<std::size_t>(n));

  auto fill_weights = [&] {
    double largest = 0.0;
    for (Index j = 0; j < cols; ++j) {
      const auto js = static_cast<std::size_t>(j);
      weights[js] = available[js] ? residual.col(j).squaredNorm() : 0.0;
      largest = std::max(largest, weights[js]);
    }
    return std::sqrt(largest);
  };

  while (static_cast<Index>(picked.size()) < n) {
    double largest = fill_weights();
    if (!(largest > threshold)) {
      // Pass exhausted: picked columns stay removed, residuals restart.
      for (Index j = 0; j < cols; ++j) {
        if (available[static_cast<std::size_t>(j)]) residual.col(j) = d.col(j);
      }
      basis.resize(d.rows(), 0);
      largest = fill_weights();
      if (!(largest > threshold)) {
        // Only (numerically) zero columns remain; take them uniformly.
        for (Index j = 0; j < cols; ++j) {
          weights[static_cast<std::size_t>(j)] = available[static_cast<std::size_t>(j)] ? 1.0 : 0.0;
        }
      }
    }
    std::discrete_distribution<Index> pick(weights.begin(), weights.end());
    const Index j = pick(rng);
    available[static_cast<std::size_t>(j)] = 0;
    picked.push_back(j);

    const double rnorm = residual.col(j).norm();
    if (!(rnorm > threshold)) continue;
    Eigen::VectorXd q = residual.col(j) / rnorm;
    if (basis.cols() > 0) q -= basis * (basis.transpose() * q);
    const double qnorm = q.norm();
    if (!(qnorm > 0.0)) continue;
    q /= qnorm;
    basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
    basis.col(basis.cols() - 1) = q;
    residual.noalias() -= q * (q.transpose() * residual);
  }
  return make_result(d, std::move(picked), Method::volume);
}

SketchResult sample_columns(const DataMatrix& d, const SamplerSpec& spec, Rng& rng) {
  SketchResult out;
  switch (spec.method) {
    case Method::srs: out = srs_without_replacement(d, spec.n, rng); break;
    case Method::srs_repl: out = srs_with_replacement(d, spec.n, rng); break;
    case Method::ris: out = ris(d, spec.n, false, rng); break;
    case Method::ris_repl: out = ris(d, spec.n, true, rng); break;
    case Method::norm: out = norm_sampling(d, spec.n, rng, spec.norm_convention); break;
    case Method::leverage: {
      const Index k = spec.leverage_k ? *spec.leverage_k : numerical_rank(d);
      out = leverage_sampling(d, spec.n, k, rng);
      break;
    }
    case Method::volume: out = volume_sampling(d, spec.n, rng); break;
  }
  out.seed = spec.seed;
  return out;
}

SketchResult sample_columns(const DataMatrix& d, const SamplerSpec& spec) {
  Rng rng = make_rng(spec.seed);
  return sample_columns(d, spec, rng);
}

}  // namespace srs
