#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bernoulli {

enum class ErrorCode {
  NotNormalized,
  NonPositiveProbability,
  BadDivisionNumber,
  MalformedSpec,
  IndexOutOfRange,
  NotGridRational,
  GenerationTooLarge,
  ADCClassRequired,
  StripNotContained,
  OutOfOpenBox,
  DegenerateRadii,
  DimensionMismatch,
  SingularSystem,
  ParseError,
  IoError,
  InternalInconsistency,
};

std::string_view to_string(ErrorCode code);

/// Every library failure is reported through this exception; `code()` is
/// the stable machine-readable part, `what()` the human-readable one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bernoulli
