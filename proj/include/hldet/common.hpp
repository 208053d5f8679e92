#pragma once

#include <stdexcept>
#include <string>

namespace hldet {

/// Malformed or truncated file content (weight archives, WAV, PGM, JSON schemas).
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A structurally valid request that cannot be satisfied by the given
/// configuration (e.g. a filterbank denser than the FFT resolution).
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Tensor/layer shape mismatch.
class ShapeError : public std::invalid_argument {
public:
    explicit ShapeError(const std::string& msg) : std::invalid_argument(msg) {}
};

} // namespace hldet
