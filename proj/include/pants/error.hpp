#pragma once

#include <stdexcept>
#include <string>

namespace pants {

enum class ErrorCode {
  EmptyInstance,
  InvalidCoordinate,
  EmptySubset,
  MissingTour,
  CycleClassMismatch,
  InstanceTooSmall,
  InstanceTooLarge,
  MergeBoundExceeded,
  UnsortedInstance,
  NotCollinear,
  InconsistentTables,
  OracleLimitExceeded,
  Parse,
  Io,
  Internal,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInstance: return "empty instance";
    case ErrorCode::InvalidCoordinate: return "invalid coordinate";
    case ErrorCode::EmptySubset: return "empty subset";
    case ErrorCode::MissingTour: return "missing tour";
    case ErrorCode::CycleClassMismatch: return "cycle class mismatch";
    case ErrorCode::InstanceTooSmall: return "instance too small";
    case ErrorCode::InstanceTooLarge: return "instance too large";
    case ErrorCode::MergeBoundExceeded: return "merge bound exceeded";
    case ErrorCode::UnsortedInstance: return "unsorted instance";
    case ErrorCode::NotCollinear: return "not collinear";
    case ErrorCode::InconsistentTables: return "inconsistent tables";
    case ErrorCode::OracleLimitExceeded: return "oracle limit exceeded";
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::Io: return "io error";
    case ErrorCode::Internal: return "internal error";
  }
  return "unknown error";
}

// Every failure raised by the library carries one of the codes above; the
// message always starts with the code's text so callers can match on it.
class Error : public std::runtime_error {
 public:
  explicit Error(ErrorCode code, const std::string& detail = {})
      : std::runtime_error(detail.empty() ? std::string(to_string(code))
                                          : std::string(to_string(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pants
