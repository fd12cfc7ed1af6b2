// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chaos_prng {

/// Base class of every error raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The integrated trajectory left the admissible region (non-finite or
/// a component beyond the magnitude bound).
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::size_t iteration)
      : Error(what + " (iteration " + std::to_string(iteration) + ")"),
        iteration_(iteration) {}

  std::size_t iteration() const noexcept { return iteration_; }

 private:
  std::size_t iteration_;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class TooLarge : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class OddVariableCount : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class NotBooleanValued : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

class DomainError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class EmptyInput : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Input shorter than a statistical test's documented minimum.
class TooShort : public InvalidArgument {
 public:
  TooShort(const std::string& test, std::size_t required, std::size_t got)
      : InvalidArgument(test + ": needs at least " + std::to_string(required) +
                        " samples, got " + std::to_string(got)),
        test_(test),
        required_(required) {}

  const std::string& test() const noexcept { return test_; }
  std::size_t required() const noexcept { return required_; }

 private:
  std::string test_;
  std::size_t required_;
};

class DegenerateInput : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

}  // namespace chaos_prng
