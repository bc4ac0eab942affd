#pragma once

#include <stdexcept>
#include <string>

namespace wavebench {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  Singularity,
  DegenerateChannel,
  ResonantConfiguration,
  Unobservable,
  UnidentifiableGeometry,
  ExperimentFailed,
};

const char* to_string(ErrorCode code) noexcept;

/// Library-wide exception. Every precondition violation and numerical
/// breakdown surfaces as one of these, tagged with a stable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

inline void require(bool condition, const std::string& what) {
  if (!condition) fail(ErrorCode::InvalidArgument, what);
}

}  // namespace wavebench
