#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "srs/matrix.hpp"
#include "srs/rng.hpp"

namespace srs {

enum class Method { srs, srs_repl, ris, ris_repl, norm, leverage, volume };

std::string_view method_name(Method method);
/// Throws InvalidArgument for an unknown name.
Method parse_method(std::string_view name);
bool is_with_replacement(Method method);
bool is_spatial(Method method);

/// Norm sampling weights: squared column norms (default) or plain norms.
enum class NormConvention { squared, plain };

struct SamplerSpec {
  Method method = Method::srs;
  Index n = 1;
  std::uint64_t seed = 0;
  std::optional<Index> leverage_k;
  NormConvention norm_convention = NormConvention::squared;
};

/// n x N1 matrix of i.i.d. standard normals, drawn row by row. Row i
/// normalized is a uniform point on the unit sphere, and the first m rows
/// of an n-row draw equal an m-row draw from the same generator state.
DataMatrix sample_gaussian_directions(Index n, Index ambient, Rng& rng);

/// Max allowed deviation of a column norm from 1 before NotNormalized.
inline constexpr double kUnitNormTolerance = 1e-6;

void require_unit_columns(const DataMatrix& x);

// Spatial random sampling. Each direction (row of `directions`) selects the
// column of X with the largest |<direction, x_j>|, ties to the lowest index.
// The without-replacement variant skips columns already chosen.

std::vector<Index> srs_select_without_replacement(const DataMatrix& x,
                                                  const DataMatrix& directions);
std::vector<Index> srs_select_with_replacement(const DataMatrix& x,
                                               const DataMatrix& directions);

/// Draws n Gaussian directions from `rng` and runs the selection. X must have
/// unit columns (NotNormalized otherwise); n <= cols (TooManySamples).
SketchResult srs_without_replacement(const DataMatrix& x, Index n, Rng& rng);
SketchResult srs_with_replacement(const DataMatrix& x, Index n, Rng& rng);

/// Uniform sampling over the column index set.
SketchResult ris(const DataMatrix& d, Index n, bool with_replacement, Rng& rng);

std::vector<double> norm_probabilities(
    const DataMatrix& d, NormConvention convention = NormConvention::squared);
SketchResult norm_sampling(const DataMatrix& d, Index n, Rng& rng,
                           NormConvention convention = NormConvention::squared);

/// n i.i.d. draws from a discrete distribution over column indices.
std::vector<Index> draw_with_probabilities(const std::vector<double>& probabilities,
                                           Index n, Rng& rng);

/// Squared row norms of the top-k right singular vectors, divided by k.
/// Throws RankDeficientK unless 1 <= k <= numerical_rank(d).
std::vector<double> leverage_probabilities(const DataMatrix& d, Index k);
SketchResult leverage_sampling(const DataMatrix& d, Index n, Index k, Rng& rng);

/// Adaptive residual sampling. A pass draws columns with probability
/// proportional to their squared residual against the span of the pass's
/// picks; once every residual norm is below 1e-10 * ||D||_F the picked
/// columns are removed and a fresh pass starts. Indices are distinct.
SketchResult volume_sampling(const DataMatrix& d, Index n, Rng& rng);

/// Dispatch on spec.method. `d` is passed as-is, so spatial methods need
/// unit columns. Uses `rng`, not spec.seed; spec.seed is copied into the
/// result.
SketchResult sample_columns(const DataMatrix& d, const SamplerSpec& spec, Rng& rng);

/// Seeds a fresh generator from spec.seed.
SketchResult sample_columns(const DataMatrix& d, const SamplerSpec& spec);

}  // namespace srs
