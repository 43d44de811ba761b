#pragma once

#include <stdexcept>
#include <string>

namespace nkv {

enum class Errc {
  UniverseMismatch,
  LengthMismatch,
  DimensionMismatch,
  NotDivisible,
  DivisionByZero,
  ZeroPolynomial,
  DegenerateDegree,
  DegreeOverflow,
  NotHomogeneous,
  RankDeficient,
  NotHypersurface,
  SingularMatrix,
  NoStrategy,
  RetryExhausted,
  UnsupportedPartition,
  UnsupportedCase,
  InvalidArgument,
  NonIntegral,
  Parse,
};

const char* errc_name(Errc code) noexcept;

/// Single exception type for the library; `code()` tells callers which
/// contract was violated.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace nkv
