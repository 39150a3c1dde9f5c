#pragma once

#include <stdexcept>
#include <string>

namespace bsvi {

// Bad or incomplete configuration (missing blocks, unknown keys, absent
// assumption data). CLI maps this to exit code 1.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure during a run (non-finite state, divergence, iteration
// cap). CLI maps this to exit code 2.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Operation not available for the requested shape (e.g. tree oracle on a
// multi-dimensional problem).
struct UnsupportedError : std::runtime_error {
    explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bsvi
