#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace srs {

enum class ErrorKind {
  ZeroColumn,
  EmptySketch,
  ParseError,
  ShapeError,
  IoError,
  TooManySamples,
  NotNormalized,
  ZeroMatrix,
  RankDeficientK,
  BadTargetDim,
  ArcOverlap,
  BadArcLengths,
  BadDims,
  BadBeta,
  BadArcs,
  BadParams,
  InvalidArgument,
};

std::string_view error_name(ErrorKind kind);

/// Every module error. `what()` is "<Name>: <detail>" so the CLI can print
/// a one-line diagnostic that carries the originating error name.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(error_name(kind)) + ": " + detail),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace srs
