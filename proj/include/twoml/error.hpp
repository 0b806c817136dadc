#pragma once

#include <stdexcept>
#include <string>

namespace twoml {

enum class Errc {
  RatioOutOfImage,
  LinearCurveNotInvertible,
  NonConcaveCurve,
  NonPositive,
  LinearCurveRejected,
  InvalidScheme,
  GammaOutOfRange,
  RhoOutOfRange,
  GridTooNarrow,
  BadGrid,
  BadDescriptor,
  BadFormat,
  OutOfRange,
  IncompatibleCurve,
  InvalidArgument,
  Io,
};

/// Name of an error kind, e.g. "RatioOutOfImage".
const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace twoml
