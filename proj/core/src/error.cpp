#include "lelm/error.hpp"

namespace lelm {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidChaosParam: return "InvalidChaosParam";
    case ErrorCode::FeatureUndefined: return "FeatureUndefined";
    case ErrorCode::DuplicateFeature: return "DuplicateFeature";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SvdFailure: return "SvdFailure";
    case ErrorCode::LabelOutOfRange: return "LabelOutOfRange";
    case ErrorCode::FeatureSetMismatch: return "FeatureSetMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SignalTooShort: return "SignalTooShort";
    case ErrorCode::TooFewWindows: return "TooFewWindows";
    case ErrorCode::ConstantInput: return "ConstantInput";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace lelm
