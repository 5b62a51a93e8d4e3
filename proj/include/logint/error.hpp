#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace logint {

enum class ErrorCode {
  malformed_input,
  domain_mismatch,
  dimension_mismatch,
  invalid_parameter,
  singularity,
  not_finite,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::malformed_input: return "malformed_input";
    case ErrorCode::domain_mismatch: return "domain_mismatch";
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::invalid_parameter: return "invalid_parameter";
    case ErrorCode::singularity: return "singularity";
    case ErrorCode::not_finite: return "not_finite";
  }
  return "unknown";
}

/// Every library failure carries a stable machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace logint
