#pragma once

#include <cstdint>
#include <string_view>

#include "srs/matrix.hpp"
#include "srs/rng.hpp"

namespace srs {

// Row-dimension reduction applied before sampling: D' = S D with S of shape
// p x N1. Embedded columns are no longer unit norm, so spatial sampling
// needs normalize_columns again afterwards.

enum class EmbeddingKind { rows, gaussian, sparse, rademacher };

std::string_view embedding_name(EmbeddingKind kind);
EmbeddingKind parse_embedding(std::string_view name);

struct EmbeddingSpec {
  EmbeddingKind kind = EmbeddingKind::gaussian;
  Index p = 1;
  // Probability of a nonzero entry for the sparse kind.
  double density = 1.0 / 3.0;
  std::uint64_t seed = 0;
};

/// rows: p distinct standard basis rows. gaussian: N(0,1)/sqrt(p).
/// sparse: sqrt(1/(density p)) * {+1, 0, -1} with probabilities
/// {density/2, 1-density, density/2}. rademacher: +-1/sqrt(p).
DataMatrix build_embedding(const EmbeddingSpec& spec, Index ambient, Rng& rng);
DataMatrix build_embedding(const EmbeddingSpec& spec, Index ambient);

DataMatrix apply_embedding(const DataMatrix& s, const DataMatrix& d);

}  // namespace srs
