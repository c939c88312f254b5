#pragma once

#include <stdexcept>
#include <string>

namespace twisted {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

/// Raised when a fixed-point alpha cannot certify the orbit error bound.
class PrecisionError : public Error {
 public:
  PrecisionError(unsigned required_bits, unsigned available_bits)
      : Error("insufficient precision: need " + std::to_string(required_bits) +
              " fractional bits, have " + std::to_string(available_bits)),
        required_bits_(required_bits),
        available_bits_(available_bits) {}

  unsigned required_bits() const noexcept { return required_bits_; }
  unsigned available_bits() const noexcept { return available_bits_; }

 private:
  unsigned required_bits_;
  unsigned available_bits_;
};

}  // namespace twisted
