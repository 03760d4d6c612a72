#pragma once

#include <stdexcept>
#include <string>

namespace sprobe {

// Exit-code contract used by the CLI: 2 config, 3 data, 4 numeric.

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Rejection sampling gave up; message names the violated constraint.
struct ConstraintInfeasible : DataError {
  explicit ConstraintInfeasible(const std::string& msg) : DataError(msg) {}
};

struct GeometryError : DataError {
  explicit GeometryError(const std::string& msg) : DataError(msg) {}
};

}  // namespace sprobe
