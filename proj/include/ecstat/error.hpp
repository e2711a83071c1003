#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ecstat {

enum class ErrorCode {
  SingularCurve,
  NotPrime,
  PrimeTooLarge,
  PrimeTooSmall,
  NotMinimal,
  NotMultiplicative,
  BadReductionAtP,
  SmallBadPrime,
  ExcludedPrime,
  TruncationTooSmall,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularCurve: return "SingularCurve";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::PrimeTooLarge: return "PrimeTooLarge";
    case ErrorCode::PrimeTooSmall: return "PrimeTooSmall";
    case ErrorCode::NotMinimal: return "NotMinimal";
    case ErrorCode::NotMultiplicative: return "NotMultiplicative";
    case ErrorCode::BadReductionAtP: return "BadReductionAtP";
    case ErrorCode::SmallBadPrime: return "SmallBadPrime";
    case ErrorCode::ExcludedPrime: return "ExcludedPrime";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every precondition failure in the library is reported through this type;
/// `code()` identifies which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ecstat
