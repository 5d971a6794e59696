#pragma once

#include <stdexcept>
#include <string>

namespace cmsim {

/// Base of every error the library throws. `error_class()` is the stable
/// name the CLI prints and maps to a nonzero exit code.
class Error : public std::runtime_error {
public:
    Error(std::string error_class, const std::string& message);

    const std::string& error_class() const noexcept { return error_class_; }

private:
    std::string error_class_;
};

/// Invalid configuration or violated structural precondition.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& message) : Error("ConfigError", message) {}
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& message) : Error("DomainError", message) {}
};

/// Non-finite numeric input.
class InputError : public Error {
public:
    explicit InputError(const std::string& message) : Error("InputError", message) {}
};

/// Empty or otherwise unusable data handed to a numeric routine.
class DataError : public Error {
public:
    explicit DataError(const std::string& message) : Error("DataError", message) {}
    DataError(std::string error_class, const std::string& message)
        : Error(std::move(error_class), message) {}
};

class InsufficientHistory : public DataError {
public:
    explicit InsufficientHistory(const std::string& message)
        : DataError("InsufficientHistory", message) {}
};

enum class LoadErrorKind { MissingFile, MalformedRow, NonPositivePrice, Misaligned, InsufficientHistory };

/// Price file could not be loaded; `kind()` tells which guard fired.
class LoadError : public Error {
public:
    LoadError(LoadErrorKind kind, const std::string& message);

    LoadErrorKind kind() const noexcept { return kind_; }

private:
    LoadErrorKind kind_;
};

/// The price series has no row for the requested day.
class EndOfData : public Error {
public:
    explicit EndOfData(const std::string& message) : Error("EndOfData", message) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& message) : Error("IoError", message) {}
};

const char* to_string(LoadErrorKind kind) noexcept;

}  // namespace cmsim
