#include "rwp/error.hpp"

namespace rwp {

const char* error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SupercriticalCharge: return "SupercriticalCharge";
    case ErrorCode::InvalidQuantumNumbers: return "InvalidQuantumNumbers";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::InvalidGridSpec: return "InvalidGridSpec";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyRange: return "EmptyRange";
    case ErrorCode::NonNormalizedSpinor: return "NonNormalizedSpinor";
    case ErrorCode::InvalidRange: return "InvalidRange";
    case ErrorCode::RangeMismatch: return "RangeMismatch";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
  }
  return "UnknownError";
}

}  // namespace rwp
