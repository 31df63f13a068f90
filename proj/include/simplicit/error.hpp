#pragma once

#include <stdexcept>
#include <string>

namespace simplicit {

/* Every failure mode gets its own code; the CLI reuses the numeric value
 * as its process exit code, so values must stay distinct and below 256. */
enum class ErrorCode : int {
  syntax_error = 10,           // malformed expression or file grammar
  unsupported_function = 11,   // function name other than sin/cos
  mixed_trig = 12,             // parameter appears both bare and inside sin/cos
  invalid_input = 13,          // structurally bad input (counts, names, ranges)
  io_error = 14,               // unreadable or unwritable file
  denominator_zero = 15,       // denominator vanishes at an evaluation point
  zero_polynomial = 16,        // operation undefined on the zero polynomial
  cap_exceeded = 17,           // enumeration budget or degree bound exceeded
  precondition = 18,           // documented precondition violated
  sampling_exhausted = 19,     // rejection sampling ran out of attempts
  empty_kernel = 20,           // interpolation matrix has full column rank
  non_generic_sampling = 21,   // kernels from independent seeds disagree
  coincides_with_sample_row = 22,  // query equals a stored sample image
  zero_coordinate = 23,        // query point has a zero coordinate
  on_surface = 24,             // sidedness asked for a point on the surface
  degenerate_ray = 25,         // restricted polynomial is identically zero
  not_corank_one = 26,         // operation requires a corank-1 handle
  range_overflow = 27,         // value does not fit the target integer type
  internal = 28,               // invariant breach; indicates a bug
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const noexcept { return code_; }
  int exit_code() const noexcept { return static_cast<int>(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::syntax_error: return "syntax_error";
    case ErrorCode::unsupported_function: return "unsupported_function";
    case ErrorCode::mixed_trig: return "mixed_trig";
    case ErrorCode::invalid_input: return "invalid_input";
    case ErrorCode::io_error: return "io_error";
    case ErrorCode::denominator_zero: return "denominator_zero";
    case ErrorCode::zero_polynomial: return "zero_polynomial";
    case ErrorCode::cap_exceeded: return "cap_exceeded";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::sampling_exhausted: return "sampling_exhausted";
    case ErrorCode::empty_kernel: return "empty_kernel";
    case ErrorCode::non_generic_sampling: return "non_generic_sampling";
    case ErrorCode::coincides_with_sample_row: return "coincides_with_sample_row";
    case ErrorCode::zero_coordinate: return "zero_coordinate";
    case ErrorCode::on_surface: return "on_surface";
    case ErrorCode::degenerate_ray: return "degenerate_ray";
    case ErrorCode::not_corank_one: return "not_corank_one";
    case ErrorCode::range_overflow: return "range_overflow";
    case ErrorCode::internal: return "internal";
  }
  return "unknown";
}

}  // namespace simplicit
