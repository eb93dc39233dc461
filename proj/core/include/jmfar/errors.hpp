#pragma once

#include <stdexcept>
#include <string>

namespace jmfar {

// Base class for all recoverable data/configuration errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidInput : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

// Malformed or truncated input file.
struct FormatError : Error {
    using Error::Error;
};

// Well-formed file in an encoding we do not handle.
struct UnsupportedError : Error {
    using Error::Error;
};

struct InvalidEvent : Error {
    using Error::Error;
};

struct ModelError : Error {
    using Error::Error;
};

struct TrainingError : Error {
    using Error::Error;
};

}  // namespace jmfar
