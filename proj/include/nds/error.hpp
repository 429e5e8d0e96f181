#pragma once

#include <stdexcept>
#include <string>

namespace nds {

// Inputs living on different spaces, or values outside the space.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Caller supplied an invalid parameter (zero horizon, empty window, ...).
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A join or cover exceeded the configured cell cap.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An exact precondition (invariance, commutation, constant mass) failed.
struct CertificateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Map or measure outside what an operation supports (slope-0 transfer, atoms
// in the independence construction, ...).
struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    [[nodiscard]] int line() const { return line_; }

private:
    int line_;
};

}  // namespace nds
