#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vecmeasure {

enum class ErrorCode {
  EmptyBody,
  DimError,
  BadDim,
  WrongKind,
  NoConvergence,
  TooManyAtoms,
  NoCertificate,
  UnknownScenario,
  NotContained,
  ParseError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-readable code; every failure in the library
/// surfaces as one of these.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyBody: return "EmptyBody";
    case ErrorCode::DimError: return "DimError";
    case ErrorCode::BadDim: return "BadDim";
    case ErrorCode::WrongKind: return "WrongKind";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::TooManyAtoms: return "TooManyAtoms";
    case ErrorCode::NoCertificate: return "NoCertificate";
    case ErrorCode::UnknownScenario: return "UnknownScenario";
    case ErrorCode::NotContained: return "NotContained";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace vecmeasure
