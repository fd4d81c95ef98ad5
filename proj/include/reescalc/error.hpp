#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>

namespace reescalc {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input: syntax errors, unknown variables, bad matrices.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Polynomial text could not be parsed; carries the byte offset.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InputError(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Operands live in different rings or free modules of different rank.
class ContextMismatch : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A theorem-guaranteed implication failed at runtime. This indicates either
/// a bug or a heuristic (uncertified) closure that was wrong.
class SoundnessAlert : public Error {
 public:
  using Error::Error;
};

class DeadlineExceeded : public Error {
 public:
  DeadlineExceeded() : Error("deadline exceeded") {}
};

/// Cooperative cancellation point for long-running computations.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;
  static Deadline after(std::chrono::duration<double> d) {
    Deadline out;
    out.at_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(d);
    return out;
  }
  static Deadline none() { return {}; }

  bool expired() const { return at_ && Clock::now() >= *at_; }
  void check() const {
    if (expired()) throw DeadlineExceeded();
  }

 private:
  std::optional<Clock::time_point> at_;
};

}  // namespace reescalc
