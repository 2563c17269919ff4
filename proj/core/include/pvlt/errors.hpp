#pragma once

#include <stdexcept>
#include <string>

namespace pvlt {

/// Invalid argument combination (bad step count, window longer than horizon, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain on which a formula is stated.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Request exceeds a configured storage or work budget.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Path has no grid-level zero crossing in (0, T); callers resample.
class NoZeroCrossing : public std::runtime_error {
 public:
  NoZeroCrossing() : std::runtime_error("path has no zero crossing in (0, T)") {}
};

class DegenerateBinning : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pvlt
