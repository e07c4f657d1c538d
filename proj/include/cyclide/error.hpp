#ifndef CYCLIDE_ERROR_HPP
#define CYCLIDE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace cyclide {

enum class ErrorCode {
  DomainError,
  DivergentParameters,
  NoConvergence,
  SingularIntegrand,
  DegenerateConfiguration,
  OnTorus,
  ZeroDenominator,
  OutOfRange,
  RejectSquare,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::DivergentParameters: return "DivergentParameters";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SingularIntegrand: return "SingularIntegrand";
    case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::OnTorus: return "OnTorus";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::RejectSquare: return "RejectSquare";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

namespace detail {

inline void require(bool ok, ErrorCode code, const char* what) {
  if (!ok) throw Error(code, what);
}

}  // namespace detail
}  // namespace cyclide

#endif  // CYCLIDE_ERROR_HPP
