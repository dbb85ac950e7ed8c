#pragma once

#include <stdexcept>
#include <string>

namespace astk {

enum class ErrorCode {
  SpanOutOfDomain,
  DanglingEdge,
  VertexNotOnSkeleton,
  NotAnAnchor,
  InsufficientTrace,
  DegenerateKnotVector,
  OutsideReducedDomain,
  KnotMultiplicityPresent,
  NegativeCoefficient,
  NotASubmesh,
  NotAnalysisSuitable,
  NotCertified,
  DimensionMismatch,
  DerivativesUnavailable,
  MalformedMeshFile,
  UnknownCommand,
  InvalidArgument,
};

const char* error_code_name(ErrorCode code);

/// Exception carrying a machine-checkable error code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace astk
