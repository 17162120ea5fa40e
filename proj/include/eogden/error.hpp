#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eogden {

enum class ErrorKind {
  EmptyInput,
  InvalidSignal,
  Shape,
  TooShort,
  Parameter,
  UnsupportedOrder,
  Band,
  DegenerateEnvelope,
  EmptySelection,
  ZeroNoise,
  SignalWeakerThanNoise,
  Parse,
  Sampling,
  Io,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::EmptyInput: return "empty-input";
    case ErrorKind::InvalidSignal: return "invalid-signal";
    case ErrorKind::Shape: return "shape";
    case ErrorKind::TooShort: return "too-short";
    case ErrorKind::Parameter: return "parameter";
    case ErrorKind::UnsupportedOrder: return "unsupported-order";
    case ErrorKind::Band: return "band";
    case ErrorKind::DegenerateEnvelope: return "degenerate-envelope";
    case ErrorKind::EmptySelection: return "empty-selection";
    case ErrorKind::ZeroNoise: return "zero-noise";
    case ErrorKind::SignalWeakerThanNoise: return "signal-weaker-than-noise";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Sampling: return "sampling";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

// Every failure raised by the toolkit carries a kind so callers (the
// benchmark in particular) can branch on it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace eogden
