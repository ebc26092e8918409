#pragma once

#include <stdexcept>
#include <string>

namespace polarforge {

// Error taxonomy mirrors the CLI exit codes: validation -> 2, numeric -> 3, io -> 4.

// Malformed or out-of-range user input: bad bit strings, out-of-range
// positions, unsupported channel kinds, rate outside [0,1], n over the cap.
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// Mathematical domain errors and geometry violations: NaN into erfc,
// erfcinv outside (0,2), a fixed-point bracket with no sign change, or a
// universality audit firing against the GA ranking.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem failures when emitting artifacts.
class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace polarforge
