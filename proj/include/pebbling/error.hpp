#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pebbling {

enum class ErrorCode {
  kParse,
  kInvalidArgument,
  kUnknownVertex,
  kNotALeaf,
  kOverflow,
  kIllegalMove,
  kPrecondition,
  kBoundsExceeded,
};

constexpr std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "PARSE";
    case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::kUnknownVertex: return "UNKNOWN_VERTEX";
    case ErrorCode::kNotALeaf: return "NOT_A_LEAF";
    case ErrorCode::kOverflow: return "OVERFLOW";
    case ErrorCode::kIllegalMove: return "ILLEGAL_MOVE";
    case ErrorCode::kPrecondition: return "PRECONDITION";
    case ErrorCode::kBoundsExceeded: return "BOUNDS_EXCEEDED";
  }
  return "UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Checked 64-bit arithmetic. Every closed-form quantity in this library is a
// sum of powers of two that can exceed int64 on deep trees; wrapping would
// silently produce wrong answers.
namespace checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw Error(ErrorCode::kOverflow, "integer overflow in addition");
  }
  return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) {
    throw Error(ErrorCode::kOverflow, "integer overflow in subtraction");
  }
  return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw Error(ErrorCode::kOverflow, "integer overflow in multiplication");
  }
  return r;
}

/// 2^exponent; exponents of 63 and above do not fit a signed 64-bit value.
inline std::int64_t pow2(std::int64_t exponent) {
  if (exponent < 0) {
    throw Error(ErrorCode::kInvalidArgument, "negative exponent");
  }
  if (exponent >= 63) {
    throw Error(ErrorCode::kOverflow,
                "2^" + std::to_string(exponent) + " exceeds 64-bit range");
  }
  return std::int64_t{1} << exponent;
}

}  // namespace checked
}  // namespace pebbling
