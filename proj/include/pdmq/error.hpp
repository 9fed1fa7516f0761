#pragma once

#include <stdexcept>
#include <string>

namespace pdmq {

enum class ErrorKind {
  DomainError,
  NonUniformField,
  InvalidParams,
  UnsupportedProfile,
  PoleError,
  NoConvergence,
  GridTooCoarse,
  SingularCoefficient,
  FactorizationBreakdown,
  SlowConvergence,
  NotNormalizable,
  ConfigError,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NonUniformField: return "NonUniformField";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::UnsupportedProfile: return "UnsupportedProfile";
    case ErrorKind::PoleError: return "PoleError";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::SingularCoefficient: return "SingularCoefficient";
    case ErrorKind::FactorizationBreakdown: return "FactorizationBreakdown";
    case ErrorKind::SlowConvergence: return "SlowConvergence";
    case ErrorKind::NotNormalizable: return "NotNormalizable";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

/// Single exception type for the library; `kind()` identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pdmq
