#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lexflow {

enum class ErrorKind {
  BalanceSumNonzero,
  NonpositiveCapacity,
  SelfLoop,
  DuplicateId,
  UnknownNode,
  KeyMismatch,
  InvalidPartition,
  LengthMismatch,
  InvalidNetwork,
  FatalCutPresent,
  IterationCapExceeded,
  EmptyCutArcSet,
  NotCritical,
  MonotonicityViolation,
  OracleInfeasible,
  TooLarge,
  Parse,
  Internal,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BalanceSumNonzero: return "BalanceSumNonzero";
    case ErrorKind::NonpositiveCapacity: return "NonpositiveCapacity";
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::UnknownNode: return "UnknownNode";
    case ErrorKind::KeyMismatch: return "KeyMismatch";
    case ErrorKind::InvalidPartition: return "InvalidPartition";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::InvalidNetwork: return "InvalidNetwork";
    case ErrorKind::FatalCutPresent: return "FatalCutPresent";
    case ErrorKind::IterationCapExceeded: return "IterationCapExceeded";
    case ErrorKind::EmptyCutArcSet: return "EmptyCutArcSet";
    case ErrorKind::NotCritical: return "NotCritical";
    case ErrorKind::MonotonicityViolation: return "MonotonicityViolation";
    case ErrorKind::OracleInfeasible: return "OracleInfeasible";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

namespace detail {

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void ensure(bool condition, const std::string& message) {
  if (!condition) fail(ErrorKind::Internal, message);
}

}  // namespace detail
}  // namespace lexflow
