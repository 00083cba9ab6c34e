#pragma once

#include <stdexcept>
#include <string>

namespace dart {

// Bad invocation or configuration: unknown flags, invalid thresholds,
// missing required settings. CLI maps this to exit code 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unreadable or structurally invalid input data. CLI maps this to exit code 2.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dart
