#pragma once

#include <stdexcept>
#include <string>

namespace bavt {

// Error taxonomy mirrors the CLI exit-code contract:
//   ConfigError -> 1, DataError/IoError -> 2, DivergenceError -> 3.
// Precondition violations in pure ops throw std::invalid_argument and are
// treated as data errors at the CLI boundary.

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DivergenceError : std::runtime_error {
    explicit DivergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace bavt
