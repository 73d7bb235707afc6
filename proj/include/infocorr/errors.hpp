#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace infocorr {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rejected input: malformed probabilities, dimension mismatches, out-of-range
// arguments. Inputs outside tolerance are rejected, never renormalized.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

// Scenario shape outside what an operation supports (e.g. correlators need k = 2).
class UnsupportedScenarioError : public InvalidInputError {
 public:
  using InvalidInputError::InvalidInputError;
};

// Enumeration would exceed the configured budget; carries the required count.
class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, std::uint64_t required)
      : Error(what), required_(required) {}
  std::uint64_t required() const { return required_; }

 private:
  std::uint64_t required_;
};

// Iterative solver ran out of budget; carries the best bracketing bounds seen.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double lower, double upper)
      : Error(what), lower_(lower), upper_(upper) {}
  double lower() const { return lower_; }
  double upper() const { return upper_; }

 private:
  double lower_;
  double upper_;
};

// Simplex cycling guard tripped after the bounded pivot count.
class CyclingError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace infocorr
