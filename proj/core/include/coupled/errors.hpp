#pragma once

#include <stdexcept>
#include <string>

namespace coupled {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  /// Short machine-readable category, used in CLI error records.
  [[nodiscard]] virtual const char* kind() const noexcept { return "error"; }
};

/// Operand dimensions do not conform.
class ShapeError : public Error {
 public:
  using Error::Error;
  [[nodiscard]] const char* kind() const noexcept override { return "shape"; }
};

/// A scalar parameter is outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
  [[nodiscard]] const char* kind() const noexcept override { return "parameter"; }
};

/// Malformed, truncated or unreadable file.
class FormatError : public Error {
 public:
  using Error::Error;
  [[nodiscard]] const char* kind() const noexcept override { return "format"; }
};

/// An ALS microiteration hit an unusable Gram system.
class DegenerateIterate : public Error {
 public:
  DegenerateIterate(std::string factor, int iteration)
      : Error("degenerate ALS iterate: Gram system for " + factor +
              " is singular at iteration " + std::to_string(iteration)),
        factor_(std::move(factor)),
        iteration_(iteration) {}

  [[nodiscard]] const char* kind() const noexcept override { return "degenerate_iterate"; }
  [[nodiscard]] const std::string& factor() const noexcept { return factor_; }
  [[nodiscard]] int iteration() const noexcept { return iteration_; }

 private:
  std::string factor_;
  int iteration_;
};

}  // namespace coupled
