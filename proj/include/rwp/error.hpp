#pragma once

#include <stdexcept>
#include <string>

namespace rwp {

enum class ErrorCode {
  SupercriticalCharge,
  InvalidQuantumNumbers,
  UnsupportedOrder,
  InvalidGridSpec,
  LengthMismatch,
  EmptyRange,
  NonNormalizedSpinor,
  InvalidRange,
  RangeMismatch,
  EmptyWindow,
};

const char* error_name(ErrorCode code) noexcept;

// Domain error raised by every library operation. The code identifies the
// violated precondition; what() carries a human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rwp
