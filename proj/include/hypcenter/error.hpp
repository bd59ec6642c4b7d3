#pragma once

#include <stdexcept>
#include <string>

namespace hypcenter {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  PoleSingularity,
  DomainError,
  DegenerateDirection,
  UndefinedAtOne,
  NotBoundaryCompatible,
  EmptyMeasure,
  ZeroTotal,
  RegionTouchesBoundary,
  NonpositiveMass,
  BusemannSingularity,
  DivergentIterates,
  UnknownFixture,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above; the C
/// API maps them one-to-one onto hc_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hypcenter
