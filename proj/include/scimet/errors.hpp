#pragma once

#include <stdexcept>
#include <string>

namespace scimet {

// Error taxonomy maps onto CLI exit codes: config/usage (1), bad or
// missing data (2), computation failures (3).

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : DataError {
    ParseError(const std::string& what, long line)
        : DataError(what + " (line " + std::to_string(line) + ")"), line_number(line) {}
    long line_number;
};

struct NotFoundError : DataError {
    explicit NotFoundError(const std::string& what) : DataError(what) {}
};

struct ComputeError : std::runtime_error {
    explicit ComputeError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace scimet
