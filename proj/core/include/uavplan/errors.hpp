#pragma once

#include <exception>
#include <string>
#include <utility>

namespace uavplan {

enum class ErrorKind {
  Domain,
  Input,
  Quadrature,
  BracketFailure,
  DegenerateDensity,
  NoSolution,
};

// Base of every error raised by the planner. A context label (usually the
// subregion being planned) can be attached while the exception propagates.
class Error : public std::exception {
 public:
  Error(ErrorKind kind, std::string message)
      : kind_(kind), message_(std::move(message)), what_(message_) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& message() const noexcept { return message_; }
  const std::string& context() const noexcept { return context_; }

  void set_context(std::string context) {
    context_ = std::move(context);
    what_ = context_.empty() ? message_ : context_ + ": " + message_;
  }

  const char* what() const noexcept override { return what_.c_str(); }

 private:
  ErrorKind kind_;
  std::string message_;
  std::string context_;
  std::string what_;
};

/// Violated precondition of a model function (e.g. zero link distance).
class DomainError : public Error {
 public:
  explicit DomainError(std::string message) : Error(ErrorKind::Domain, std::move(message)) {}
};

/// Malformed user input (scenario files, flags).
class InputError : public Error {
 public:
  explicit InputError(std::string message) : Error(ErrorKind::Input, std::move(message)) {}
};

class QuadratureError : public Error {
 public:
  explicit QuadratureError(std::string message)
      : Error(ErrorKind::Quadrature, std::move(message)) {}
};

/// The kernel derivative never became positive while growing the bracket.
class BracketFailure : public Error {
 public:
  explicit BracketFailure(std::string message)
      : Error(ErrorKind::BracketFailure, std::move(message)) {}
};

/// Zero user density with positive circuit power: the optimal radius diverges.
class DegenerateDensity : public Error {
 public:
  explicit DegenerateDensity(std::string message)
      : Error(ErrorKind::DegenerateDensity, std::move(message)) {}
};

/// A fixed-power altitude problem has no feasible altitude at this radius.
class NoSolution : public Error {
 public:
  explicit NoSolution(std::string message) : Error(ErrorKind::NoSolution, std::move(message)) {}
};

}  // namespace uavplan
