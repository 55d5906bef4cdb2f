#pragma once

#include <stdexcept>
#include <string>

namespace defectlab {

/// Base for all fatal toolchain errors. The CLI maps these to exit code 2
/// (data errors) unless a more specific category applies.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad user input: unknown flags, malformed config, invalid combinations.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Input data that cannot be processed: missing files, malformed CSV,
/// empty repositories, unusable datasets.
class DataError : public Error {
public:
    using Error::Error;
};

class ParseError : public DataError {
public:
    ParseError(const std::string& path, int line, const std::string& what)
        : DataError(path + ":" + std::to_string(line) + ": " + what) {}
};

class MalformedCsv : public DataError {
public:
    MalformedCsv(const std::string& path, int line, const std::string& what)
        : DataError(path + ":" + std::to_string(line) + ": " + what) {}
};

class EmptyRepository : public DataError {
public:
    using DataError::DataError;
};

class GitCommandError : public DataError {
public:
    using DataError::DataError;
};

class ModelCycle : public DataError {
public:
    using DataError::DataError;
};

class ArityMismatch : public DataError {
public:
    using DataError::DataError;
};

class TooFewSamples : public DataError {
public:
    using DataError::DataError;
};

class DegenerateResponse : public DataError {
public:
    using DataError::DataError;
};

}  // namespace defectlab
