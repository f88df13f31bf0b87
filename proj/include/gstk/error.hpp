#pragma once

#include <stdexcept>
#include <string>

namespace gstk {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (non-orthonormal rotation,
/// asymmetric stiffness, non-positive relative radius, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Iterative solve did not reach its tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double best_residual)
        : Error(what), best_residual_(best_residual) {}

    double best_residual() const noexcept { return best_residual_; }

private:
    double best_residual_;
};

/// A wrench admits no compressive contact on the fingertip surface.
class InadmissibleContact : public Error {
public:
    using Error::Error;
};

/// Tangential load at or beyond the friction limit.
class GrossSlide : public Error {
public:
    using Error::Error;
};

/// Malformed text input; carries the 1-based line number (0 when unknown).
class ParseError : public Error {
public:
    ParseError(const std::string& source, int line, const std::string& msg)
        : Error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + msg),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace gstk
