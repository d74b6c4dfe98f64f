#pragma once

#include <stdexcept>
#include <string>

namespace kipp {

enum class ErrorCode {
  zero_superdiagonal,
  not_reciprocal,
  invalid_param,
  index_out_of_range,
  degenerate_input,
  wrong_size,
  inconclusive,
  not_toeplitz_case,
  degenerate_branch,
  no_bracket,
  not_realizable,
  invalid_config,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::zero_superdiagonal: return "ZeroSuperdiagonal";
    case ErrorCode::not_reciprocal: return "NotReciprocal";
    case ErrorCode::invalid_param: return "InvalidParam";
    case ErrorCode::index_out_of_range: return "IndexOutOfRange";
    case ErrorCode::degenerate_input: return "DegenerateInput";
    case ErrorCode::wrong_size: return "WrongSize";
    case ErrorCode::inconclusive: return "Inconclusive";
    case ErrorCode::not_toeplitz_case: return "NotToeplitzCase";
    case ErrorCode::degenerate_branch: return "DegenerateBranch";
    case ErrorCode::no_bracket: return "NoBracket";
    case ErrorCode::not_realizable: return "NotRealizable";
    case ErrorCode::invalid_config: return "InvalidConfig";
  }
  return "Unknown";
}

/// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kipp
