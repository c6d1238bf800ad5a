#pragma once

#include <stdexcept>
#include <string>

namespace skr {

// Raised for invalid user input: bad config keys, malformed values,
// out-of-range parameters. Maps to CLI exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// ValidationError carrying a config-file line number.
class ConfigError : public ValidationError {
 public:
  ConfigError(const std::string& file, int line, const std::string& msg)
      : ValidationError(file + ":" + std::to_string(line) + ": " + msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Raised when a numerical procedure fails to meet its contract:
// quadrature non-convergence, indefinite covariance beyond the clip
// tolerance, NaN during stepping. Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace skr
