#pragma once

#include <stdexcept>
#include <string>

namespace meanlab {

// Input outside a table/grid/polynomial range (caller error, exit code 1).
struct RangeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A zero table does not cover the requested height.
struct CoverageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Requested table would exceed the configured memory budget.
struct CapacityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Numeric failures detected at run time (exit code 2).
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Zero-count certification failed; message carries the offending Gram blocks.
struct CertificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// log zeta requested exactly at a zero on the half-line.
struct SingularPointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Quadrature failed to reach the requested tolerance.
struct QuadratureError : std::runtime_error {
    std::string message;
    double achieved;
    QuadratureError(const std::string& msg, double err)
        : std::runtime_error(msg + " (achieved error estimate " + std::to_string(err) + ")"),
          achieved(err) {}
};

// Zero-table file problems.
struct CorruptTableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnsupportedVersionError : CorruptTableError {
    using CorruptTableError::CorruptTableError;
};
struct ChecksumError : CorruptTableError {
    using CorruptTableError::CorruptTableError;
};

}  // namespace meanlab
