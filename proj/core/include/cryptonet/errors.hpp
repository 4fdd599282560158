#pragma once

#include <stdexcept>
#include <string>

namespace cryptonet {

// Error taxonomy. The three branches map onto the CLI exit codes:
// ConfigError -> 2, DataError -> 3, NumericError -> 4.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class DataError : public Error {
public:
    using Error::Error;
};

class NumericError : public Error {
public:
    using Error::Error;
};

// --- config ---

class InvalidParameter : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// --- data ---

class IoError : public DataError {
public:
    using DataError::DataError;
};

class SchemaError : public DataError {
public:
    using DataError::DataError;
};

class ValidationError : public DataError {
public:
    using DataError::DataError;
};

class SymbolUnknown : public DataError {
public:
    using DataError::DataError;
};

class NetworkError : public DataError {
public:
    using DataError::DataError;
};

class EmptyPanel : public DataError {
public:
    using DataError::DataError;
};

class EmptyInput : public DataError {
public:
    using DataError::DataError;
};

class MixedSymbols : public DataError {
public:
    using DataError::DataError;
};

class TimestampOffGrid : public DataError {
public:
    using DataError::DataError;
};

class FocusMissing : public DataError {
public:
    using DataError::DataError;
};

// --- numeric ---

class ZeroVariance : public NumericError {
public:
    using NumericError::NumericError;
};

class WindowTooLong : public NumericError {
public:
    using NumericError::NumericError;
};

class TooFewVertices : public NumericError {
public:
    using NumericError::NumericError;
};

class DisconnectedGraph : public NumericError {
public:
    using NumericError::NumericError;
};

class NoConvergence : public NumericError {
public:
    NoConvergence(const std::string& what, double residual)
        : NumericError(what), residual_(residual) {}

    double residual() const { return residual_; }

private:
    double residual_ = 0.0;
};

}  // namespace cryptonet
