#pragma once

#include <stdexcept>
#include <string>

namespace gmap {

// Machine-readable failure categories; the CLI prints code_name() verbatim.
enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  ZeroDenominator,
  ResourceLimit,
  Inconsistent,
  Precondition,
  VerificationFailed,
  SearchExhausted,
  Parse,
};

inline const char* code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::DimensionMismatch: return "dimension_mismatch";
    case ErrorCode::ZeroDenominator: return "zero_denominator";
    case ErrorCode::ResourceLimit: return "resource_limit";
    case ErrorCode::Inconsistent: return "inconsistent";
    case ErrorCode::Precondition: return "precondition";
    case ErrorCode::VerificationFailed: return "verification_failed";
    case ErrorCode::SearchExhausted: return "search_exhausted";
    case ErrorCode::Parse: return "parse_error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gmap
