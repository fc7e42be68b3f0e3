#pragma once

#include <stdexcept>
#include <string>

namespace peakon {

// Base of all library failures. `module()` names the component that raised it
// so front ends can report where a pipeline broke.
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& what)
      : std::runtime_error(module + ": " + what), module_(std::move(module)) {}

  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

// Violated precondition or malformed input.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// The computation itself broke down (step-size underflow, unpolishable roots,
// a vanishing denominator where none is permitted).
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace peakon
