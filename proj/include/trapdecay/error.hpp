#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace trapdecay {

enum class ErrorCode {
  NegativeRate,
  ShapeMismatch,
  UnphysicalInitialNorm,
  UnphysicalPhotonNumber,
  InvalidArgument,
  EmptyTimeGrid,
  NonMonotoneTimeGrid,
  StepTooLarge,
  NonDegenerate,
  AllRatesZero,
  NoQuiescentPhase,
  ConfigSyntax,
  ConfigRange,
  Io,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NegativeRate: return "NegativeRate";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::UnphysicalInitialNorm: return "UnphysicalInitialNorm";
    case ErrorCode::UnphysicalPhotonNumber: return "UnphysicalPhotonNumber";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyTimeGrid: return "EmptyTimeGrid";
    case ErrorCode::NonMonotoneTimeGrid: return "NonMonotoneTimeGrid";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::NonDegenerate: return "NonDegenerate";
    case ErrorCode::AllRatesZero: return "AllRatesZero";
    case ErrorCode::NoQuiescentPhase: return "NoQuiescentPhase";
    case ErrorCode::ConfigSyntax: return "ConfigSyntax";
    case ErrorCode::ConfigRange: return "ConfigRange";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

/// Raised by every library operation. `key()` names the offending config key
/// for ConfigSyntax / ConfigRange and is empty otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::string key = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        key_(std::move(key)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& key() const noexcept { return key_; }

 private:
  ErrorCode code_;
  std::string key_;
};

}  // namespace trapdecay
