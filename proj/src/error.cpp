#include "twoml/error.hpp"

namespace twoml {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::RatioOutOfImage: return "RatioOutOfImage";
    case Errc::LinearCurveNotInvertible: return "LinearCurveNotInvertible";
    case Errc::NonConcaveCurve: return "NonConcaveCurve";
    case Errc::NonPositive: return "NonPositive";
    case Errc::LinearCurveRejected: return "LinearCurveRejected";
    case Errc::InvalidScheme: return "InvalidScheme";
    case Errc::GammaOutOfRange: return "GammaOutOfRange";
    case Errc::RhoOutOfRange: return "RhoOutOfRange";
    case Errc::GridTooNarrow: return "GridTooNarrow";
    case Errc::BadGrid: return "BadGrid";
    case Errc::BadDescriptor: return "BadDescriptor";
    case Errc::BadFormat: return "BadFormat";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::IncompatibleCurve: return "IncompatibleCurve";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

}  // namespace twoml
