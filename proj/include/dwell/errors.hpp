#pragma once

#include <stdexcept>
#include <string>

namespace dwell {

/// Bad user input: malformed config file, unknown key, invalid grid spec.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Propagation failure: norm blow-up, non-convergent relaxation,
/// unsolvable overlap system.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dwell
