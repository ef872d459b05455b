#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace inedor {

enum class ErrorCode {
  NonPositiveDensity,
  PopulationSumMismatch,
  PopulationOutOfRange,
  CoherenceOutOfRange,
  ZeroGyromagneticRatio,
  NonPositiveDriveField,
  NonPositiveMass,
  NonPositiveLength,
  NonPositiveGradient,
  WrongStatistics,
  ZeroContactShift,
  InvalidSweep,
  InvalidArgument,
  BinningMismatch,
  InsufficientRange,
  QuadratureFailure,
  FlatSpectrum,
  ConfigError,
  IoError,
};

inline constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveDensity: return "NonPositiveDensity";
    case ErrorCode::PopulationSumMismatch: return "PopulationSumMismatch";
    case ErrorCode::PopulationOutOfRange: return "PopulationOutOfRange";
    case ErrorCode::CoherenceOutOfRange: return "CoherenceOutOfRange";
    case ErrorCode::ZeroGyromagneticRatio: return "ZeroGyromagneticRatio";
    case ErrorCode::NonPositiveDriveField: return "NonPositiveDriveField";
    case ErrorCode::NonPositiveMass: return "NonPositiveMass";
    case ErrorCode::NonPositiveLength: return "NonPositiveLength";
    case ErrorCode::NonPositiveGradient: return "NonPositiveGradient";
    case ErrorCode::WrongStatistics: return "WrongStatistics";
    case ErrorCode::ZeroContactShift: return "ZeroContactShift";
    case ErrorCode::InvalidSweep: return "InvalidSweep";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BinningMismatch: return "BinningMismatch";
    case ErrorCode::InsufficientRange: return "InsufficientRange";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::FlatSpectrum: return "FlatSpectrum";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

/// Numerical failures map to CLI exit code 2, everything else to 1.
inline constexpr bool is_numerical(ErrorCode code) {
  return code == ErrorCode::QuadratureFailure || code == ErrorCode::FlatSpectrum ||
         code == ErrorCode::InsufficientRange;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct Violation {
  ErrorCode code;
  std::string detail;
};

/// Thrown by validate(); carries every violated invariant, not just the first.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations)
      : Error(violations.empty() ? ErrorCode::ConfigError : violations.front().code,
              summarize(violations)),
        violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const noexcept { return violations_; }

  bool has(ErrorCode code) const {
    for (const auto& v : violations_)
      if (v.code == code) return true;
    return false;
  }

 private:
  static std::string summarize(const std::vector<Violation>& vs) {
    std::string out;
    for (const auto& v : vs) {
      if (!out.empty()) out += "; ";
      out += std::string(to_string(v.code)) + " (" + v.detail + ")";
    }
    return out;
  }

  std::vector<Violation> violations_;
};

/// Quadrature did not reach its tolerance; the achieved estimate is kept.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double estimate, double error_estimate)
      : Error(ErrorCode::QuadratureFailure, what),
        estimate_(estimate),
        error_estimate_(error_estimate) {}

  double estimate() const noexcept { return estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double estimate_;
  double error_estimate_;
};

}  // namespace inedor
