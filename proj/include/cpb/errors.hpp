#pragma once

#include <stdexcept>
#include <string>

namespace cpb {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionError : Error {
    using Error::Error;
};

struct RangeError : Error {
    using Error::Error;
};

struct NotADensityMatrixError : Error {
    using Error::Error;
};

/// Off-X-pattern entries exceed the validation tolerance.
struct XLeakageError : Error {
    double max_off_x;
    XLeakageError(const std::string& what, double leak) : Error(what), max_off_x(leak) {}
};

struct StepTooLargeError : Error {
    using Error::Error;
};

struct TruncationError : Error {
    using Error::Error;
};

/// The B^2/4 - P - C^2 = R residual blew past the internal bound;
/// signals an implementation bug, not bad input.
struct IdentityViolationError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

} // namespace cpb
