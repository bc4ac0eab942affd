#include "wavebench/error.hpp"

namespace wavebench {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::Singularity: return "singularity";
    case ErrorCode::DegenerateChannel: return "degenerate channel";
    case ErrorCode::ResonantConfiguration: return "resonant configuration";
    case ErrorCode::Unobservable: return "unobservable";
    case ErrorCode::UnidentifiableGeometry: return "unidentifiable geometry";
    case ErrorCode::ExperimentFailed: return "experiment failed";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace wavebench
