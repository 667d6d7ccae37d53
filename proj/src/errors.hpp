#pragma once

#include <stdexcept>
#include <string>

namespace qsos {

enum class ErrorCode {
  InvalidArgument,
  NonOrthogonalBasis,
  ShapeMismatch,
  DimensionTooLarge,
  IndexOutOfRange,
  NonHermitian,
  DegenerateGroundState,
  GapTooSmall,
  OverlapNotPositive,
  OddOrbitalCount,
  RootFindFailure,
  Infeasible,
  Io,
  Parse,
};

/// Library-wide exception carrying a stable error code for the C layer.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace qsos
