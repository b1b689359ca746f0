#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace fsi {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside the domain of the operation (e.g. t0 = 1/2).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A scheme or document violates a structural invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The force model lacks a derivative order the caller asked for.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// Step size beyond the oscillator stability limit (|trace|/2 > 1).
class InstabilityError : public Error {
 public:
  using Error::Error;
};

/// Series extraction or fitting did not converge.
class ExtractionError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at (or numerically indistinguishable from) a pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// A quantity is undefined at this point, e.g. the LRL angle of a circular orbit.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Non-finite force evaluation or a singular point of the potential. Carries
/// the stage index when raised by the stepper and, once propagated through an
/// integration loop, the step index.
class SingularityError : public Error {
 public:
  explicit SingularityError(const std::string& what, std::optional<std::size_t> stage = {},
                            std::optional<std::size_t> step = {})
      : Error(describe(what, stage, step)), what_(what), stage_(stage), step_(step) {}

  [[nodiscard]] std::optional<std::size_t> stage() const noexcept { return stage_; }
  [[nodiscard]] std::optional<std::size_t> step() const noexcept { return step_; }
  [[nodiscard]] const std::string& detail() const noexcept { return what_; }

  [[nodiscard]] SingularityError atStep(std::size_t step) const {
    return SingularityError(what_, stage_, step);
  }

 private:
  static std::string describe(const std::string& what, std::optional<std::size_t> stage,
                              std::optional<std::size_t> step) {
    std::string msg = "singularity";
    if (stage) {
      msg += " at stage " + std::to_string(*stage);
    }
    if (step) {
      msg += (stage ? ", step " : " at step ") + std::to_string(*step);
    }
    if (!what.empty()) {
      msg += ": " + what;
    }
    return msg;
  }

  std::string what_;
  std::optional<std::size_t> stage_;
  std::optional<std::size_t> step_;
};

}  // namespace fsi
