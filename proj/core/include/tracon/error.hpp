#pragma once

#include <stdexcept>
#include <string>

namespace tracon {

/// Base class for all errors raised by the toolkit.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A caller handed us a value that violates a documented precondition.
class InvalidInput : public Error {
public:
    explicit InvalidInput(const std::string& what) : Error(what) {}
};

/// A config file, CSV file or manifest could not be parsed or validated.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

/// Raised when a distribution cannot be calibrated from the given records.
class CalibrationError : public Error {
public:
    explicit CalibrationError(const std::string& what) : Error(what) {}
};

} // namespace tracon
