#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pencillab {

enum class ErrorCode {
  InvalidArgument,
  InvalidProfile,
  RiemannHurwitzViolation,
  FormulationMismatch,
  ProfileInfeasible,
  ResourceLimit,
  DegeneratePencil,
  BasePointPresent,
  CharacteristicObstruction,
  CoincidentPoints,
  ChainMismatch,
  PointCollision,
  ZeroCount,
  EmptyVariety,
  ParseError,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Domain error carrying a machine-readable code. Thrown for invalid or
/// infeasible input; never for internal bugs except FormulationMismatch.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view code_name() const noexcept { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) {
  throw Error(code, detail);
}

inline void require(bool condition, ErrorCode code, const std::string& detail) {
  if (!condition) fail(code, detail);
}

}  // namespace pencillab
