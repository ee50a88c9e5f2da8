#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mrdepth {

// Failure categories. Each maps to a stable lowercase tag that ends up in
// CLI diagnostics and report sentinels.
enum class ErrorKind {
  EmptySample,
  DegenerateScale,
  DimensionMismatch,
  CenterNotMinimal,
  SingularCovariance,
  AllDirectionsDegenerate,
  ConstantInput,
  LengthMismatch,
  ZeroWeight,
  InvalidArgument,
  Io,
  Parse,
};

constexpr std::string_view tag(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::EmptySample: return "empty-sample";
    case ErrorKind::DegenerateScale: return "degenerate-scale";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::CenterNotMinimal: return "center-not-minimal";
    case ErrorKind::SingularCovariance: return "singular-covariance";
    case ErrorKind::AllDirectionsDegenerate: return "all-directions-degenerate";
    case ErrorKind::ConstantInput: return "constant-input";
    case ErrorKind::LengthMismatch: return "length-mismatch";
    case ErrorKind::ZeroWeight: return "zero-weight";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::Io: return "io-error";
    case ErrorKind::Parse: return "parse-error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(tag(kind)) + (detail.empty() ? "" : ": " + detail)),
        kind_(kind) {}
  explicit Error(ErrorKind kind) : Error(kind, "") {}

  ErrorKind kind() const noexcept { return kind_; }

  // Input errors are caused by what the caller handed in; everything else is
  // a numeric condition discovered while computing.
  bool is_input_error() const noexcept {
    switch (kind_) {
      case ErrorKind::EmptySample:
      case ErrorKind::DimensionMismatch:
      case ErrorKind::LengthMismatch:
      case ErrorKind::InvalidArgument:
      case ErrorKind::Io:
      case ErrorKind::Parse:
        return true;
      default:
        return false;
    }
  }

 private:
  ErrorKind kind_;
};

}  // namespace mrdepth
