#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tightcert {

enum class ErrorCode {
  kInvalidArgument,
  kNonFinite,
  kIndexOutOfRange,
  kNonConvergence,
  kInvalidProbability,
  kOddDimension,
  kUnknownEnsemble,
  kRequiresDiscreteInstance,
  kMissingLabels,
  kMissingParams,
  kNonSignVector,
  kNonLaplacian,
  kNonPositiveDiagonalMax,
  kDomainError,
  kUnequalRowSums,
  kConfigError,
  kIoError,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tightcert
