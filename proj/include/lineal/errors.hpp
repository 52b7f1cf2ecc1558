#pragma once

#include <stdexcept>
#include <string>

namespace lineal {

struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " at " + std::to_string(line_) + ":" + std::to_string(col_)),
        line(line_),
        col(col_) {}
};

struct TypeError : std::runtime_error {
  explicit TypeError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DialectError : std::runtime_error {
  explicit DialectError(const std::string& msg) : std::runtime_error(msg) {}
};

struct EvalError : std::runtime_error {
  explicit EvalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Step budget ran out inside an operation that needs a normal form.
struct FuelError : EvalError {
  explicit FuelError(const std::string& msg) : EvalError(msg) {}
};

// Measurement of an (epsilon-)zero-norm state.
struct DegenerateMeasurement : std::runtime_error {
  explicit DegenerateMeasurement(const std::string& msg) : std::runtime_error(msg) {}
};

struct OracleError : std::runtime_error {
  explicit OracleError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace lineal
