// Error categories used across the library. The C API maps these onto
// status codes; the CLI maps them onto exit codes.
#pragma once

#include <stdexcept>
#include <string>

namespace perikon {

// Bad or inconsistent configuration (schema violation, invalid value).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical instability detected mid-run (non-finite state).
class InstabilityError : public std::runtime_error {
public:
    explicit InstabilityError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem failures; the offending path is part of the message.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Model-level precondition failure (empty horizon, degenerate geometry).
class ModelError : public std::runtime_error {
public:
    explicit ModelError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace perikon
