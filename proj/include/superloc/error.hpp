#pragma once

#include <stdexcept>
#include <string>

namespace superloc {

enum class ErrorCode {
  Dimension,
  Divergence,
  Nondegeneracy,
  CSStructure,
  Equivariance,
  EnumerationLimit,
  Model,
  Numeric,
  Parse,
  Internal,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::Dimension: return "dimension";
    case ErrorCode::Divergence: return "divergence";
    case ErrorCode::Nondegeneracy: return "nondegeneracy";
    case ErrorCode::CSStructure: return "cs-structure";
    case ErrorCode::Equivariance: return "equivariance";
    case ErrorCode::EnumerationLimit: return "enumeration-limit";
    case ErrorCode::Model: return "model";
    case ErrorCode::Numeric: return "numeric";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }
  const char* code_name() const { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace superloc
