#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lelm {

enum class ErrorCode {
  InvalidArgument,
  InvalidChaosParam,
  FeatureUndefined,
  DuplicateFeature,
  DimensionMismatch,
  SvdFailure,
  LabelOutOfRange,
  FeatureSetMismatch,
  LengthMismatch,
  IoError,
  ParseError,
  SignalTooShort,
  TooFewWindows,
  ConstantInput,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for every failure raised by the library. The code
/// lets callers (and the CLI exit-code mapping) branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lelm
