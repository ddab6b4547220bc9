#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace bd {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedField : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line) : Error(msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// A precondition on the mathematical input failed (not idempotent, not a
/// subgroup, not Galois-stable, ...).
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

/// An outcome that a theorem rules out was observed.  Always a bug or a
/// violated hypothesis, never a silently wrong answer.
class Inconsistency : public Error {
 public:
  using Error::Error;
};

/// A randomized search exhausted its retry budget.
class RetryBudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// The single source of randomness.  Owned by the caller and passed by
/// reference into every randomized routine.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// In [0, bound); multiply-shift keeps the stream portable across
  /// standard libraries.
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(engine_()) * bound) >> 64);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace bd
