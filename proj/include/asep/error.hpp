#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace asep {

enum class ErrorCode {
  ZeroSiteWeight,
  NotNormalized,
  NegativeWeight,
  DuplicateVector,
  DimensionMismatch,
  InvalidDensity,
  DensityMismatch,
  UncoveredSite,
  NonCenteredInput,
  NotInG,
  BoxTooLarge,
  SingularDirichlet,
  IllConditioned,
  SingularQ,
  ConfigParse,
};

inline std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so the
// CLI can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroSiteWeight: return "ZeroSiteWeight";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::DuplicateVector: return "DuplicateVector";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidDensity: return "InvalidDensity";
    case ErrorCode::DensityMismatch: return "DensityMismatch";
    case ErrorCode::UncoveredSite: return "UncoveredSite";
    case ErrorCode::NonCenteredInput: return "NonCenteredInput";
    case ErrorCode::NotInG: return "NotInG";
    case ErrorCode::BoxTooLarge: return "BoxTooLarge";
    case ErrorCode::SingularDirichlet: return "SingularDirichlet";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::SingularQ: return "SingularQ";
    case ErrorCode::ConfigParse: return "ConfigParse";
  }
  return "Unknown";
}

}  // namespace asep
