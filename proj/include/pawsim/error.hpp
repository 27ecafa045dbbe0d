#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pawsim {

enum class ErrorKind {
  SpaceTooLarge,
  DegeneratePartition,
  SpectralFailure,
  ShapeMismatch,
  InvalidArgument,
  ClockTooSmall,
  DegenerateEnvelope,
  IncompatibleSpec,
  UnresolvableEnergy,
  EmptyHistory,
  InvalidRepartition,
  Config,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SpaceTooLarge: return "space too large";
    case ErrorKind::DegeneratePartition: return "degenerate partition";
    case ErrorKind::SpectralFailure: return "spectral failure";
    case ErrorKind::ShapeMismatch: return "shape mismatch";
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::ClockTooSmall: return "clock too small";
    case ErrorKind::DegenerateEnvelope: return "degenerate envelope";
    case ErrorKind::IncompatibleSpec: return "incompatible spec";
    case ErrorKind::UnresolvableEnergy: return "unresolvable energy";
    case ErrorKind::EmptyHistory: return "empty history";
    case ErrorKind::InvalidRepartition: return "invalid repartition";
    case ErrorKind::Config: return "config error";
  }
  return "unknown";
}

/// Every failure raised by the library carries a machine-readable kind;
/// what() is "<kind>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pawsim
