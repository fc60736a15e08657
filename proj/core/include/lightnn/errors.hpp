#pragma once

#include <stdexcept>
#include <string>

namespace lightnn {

/// Base class for all lightnn errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Structural misconfiguration: incompatible dimensions, invalid hyperparameters.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Bad data handed to an operation: non-finite inputs, empty sets, shape mismatch.
class InputError : public Error {
public:
    using Error::Error;
};

/// NaN/Inf encountered during numerics; carries the offending batch index.
class NumericalError : public Error {
public:
    NumericalError(const std::string& what, long batch_index)
        : Error(what), batch_index(batch_index) {}

    long batch_index;
};

/// Training loss diverged; carries the epoch in which it happened.
class DivergenceError : public Error {
public:
    DivergenceError(const std::string& what, int epoch) : Error(what), epoch(epoch) {}

    int epoch;
};

/// Byte-level decode failures for the IDX format.
class ParseError : public Error {
public:
    enum class Code { BadMagic, Truncated, TrailingData, BadValue };

    ParseError(Code code, const std::string& what) : Error(what), code(code) {}

    Code code;
};

/// Filesystem / download problems.
class IoError : public Error {
public:
    using Error::Error;
};

/// Network access required but forbidden or unavailable.
class OfflineError : public IoError {
public:
    using IoError::IoError;
};

} // namespace lightnn
