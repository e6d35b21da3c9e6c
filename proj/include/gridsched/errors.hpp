// Exception hierarchy shared by all modules. The CLI maps ParameterError to
// exit code 2 and InstanceError/ParseError to exit code 3.

#ifndef GRIDSCHED_ERRORS_HPP
#define GRIDSCHED_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gridsched {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad algorithm parameters, weights, worker counts, unknown algorithm names.
struct ParameterError : Error {
    using Error::Error;
};

// Mismatched matrix/vector dimensions between a solution and its instance.
struct ShapeError : Error {
    using Error::Error;
};

// Invalid or unusable problem instances.
struct InstanceError : Error {
    using Error::Error;
};

// Instance valid but beyond an exhaustive solver's guard.
struct InstanceTooLargeError : InstanceError {
    using InstanceError::InstanceError;
};

// Malformed input documents; carries a 1-based line number when known.
struct ParseError : InstanceError {
    ParseError(const std::string& msg, int line = 0)
        : InstanceError(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
          line_number(line) {}
    int line_number;
};

// Structurally valid document in a dialect this toolkit does not read.
struct UnsupportedFormatError : ParseError {
    using ParseError::ParseError;
};

// Parallel strategy applied to a solver family that cannot honor it.
struct UnsupportedStrategyError : ParameterError {
    using ParameterError::ParameterError;
};

}  // namespace gridsched

#endif
