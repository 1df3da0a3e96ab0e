#include "srs/embedding.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace srs {

std::string_view embedding_name(EmbeddingKind kind) {
  switch (kind) {
    case EmbeddingKind::rows: return "rows";
    case EmbeddingKind::gaussian: return "gaussian";
    case EmbeddingKind::sparse: return "sparse";
    case EmbeddingKind::rademacher: return "rademacher";
  }
  return "unknown";
}

EmbeddingKind parse_embedding(std::string_view name) {
  for (EmbeddingKind k : {EmbeddingKind::rows, EmbeddingKind::gaussian,
                          EmbeddingKind::sparse, EmbeddingKind::rademacher}) {
    if (embedding_name(k) == name) return k;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown embedding '" + std::string(name) + "'");
}

DataMatrix build_embedding(const EmbeddingSpec& spec, Index ambient, Rng& rng) {
  const Index p = spec.p;
  if (p < 1) throw Error(ErrorKind::BadTargetDim, "target dimension must be >= 1");
  if (ambient < 1) throw Error(ErrorKind::InvalidArgument, "ambient dimension must be >= 1");
  const double dp = static_cast<double>(p);
  DataMatrix s = DataMatrix::Zero(p, ambient);

  switch (spec.kind) {
    case EmbeddingKind::rows: {
      if (p > ambient) {
        throw Error(ErrorKind::BadTargetDim,
                    "cannot sample " + std::to_string(p) + " distinct rows from " +
                        std::to_string(ambient));
      }
      std::vector<Index> perm(static_cast<std::size_t>(ambient));
      std::iota(perm.begin(), perm.end(), Index{0});
      for (Index i = 0; i < p; ++i) {
        std::uniform_int_distribution<Index> pick(i, ambient - 1);
        std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(pick(rng))]);
        s(i, perm[static_cast<std::size_t>(i)]) = 1.0;
      }
      break;
    }
    case EmbeddingKind::gaussian: {
      std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(dp));
      for (Index i = 0; i < p; ++i) {
        for (Index k = 0; k < ambient; ++k) s(i, k) = normal(rng);
      }
      break;
    }
    case EmbeddingKind::sparse: {
      const double density = spec.density;
      if (!(density > 0.0 && density <= 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "sparse density must lie in (0, 1]");
      }
      const double scale = std::sqrt(1.0 / (density * dp));
      std::uniform_real_distribution<double> u(0.0, 1.0);
      for (Index i = 0; i < p; ++i) {
        for (Index k = 0; k < ambient; ++k) {
          const double draw = u(rng);
          if (draw < density / 2) {
            s(i, k) = scale;
          } else if (draw < density) {
            s(i, k) = -scale;
          }
        }
      }
      break;
    }
    case EmbeddingKind::rademacher: {
      const double scale = 1.0 / std::sqrt(dp);
      std::bernoulli_distribution coin(0.5);
      for (Index i = 0; i < p; ++i) {
        for (Index k = 0; k < ambient; ++k) s(i, k) = coin(rng) ? scale : -scale;
      }
      break;
    }
  }
  return s;
}

DataMatrix build_embedding(const EmbeddingSpec& spec, Index ambient) {
  Rng rng = make_rng(spec.seed);
  return build_embedding(spec, ambient, rng);
}

DataMatrix apply_embedding(const DataMatrix& s, const DataMatrix& d) {
  if (s.cols() != d.rows()) {
    throw Error(ErrorKind::ShapeError,
                "embedding is " + std::to_string(s.rows()) + " x " + std::to_string(s.cols()) +
                    " but data has " + std::to_string(d.rows()) + " rows");
  }
  return s * d;
}

}  // namespace srs
