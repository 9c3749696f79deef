#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace quasirank {

/// Malformed input data (edge lists, config files). CLI exit code 2.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, std::size_t line = 0)
        : std::runtime_error(std::move(msg)), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Violated precondition or out-of-range parameter. CLI exit code 3.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Iterative solver ran out of budget. Carries the last residual. CLI exit code 4.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(std::string msg, double residual, std::size_t iterations)
        : std::runtime_error(std::move(msg)), residual_(residual), iterations_(iterations) {}
    double residual() const { return residual_; }
    std::size_t iterations() const { return iterations_; }

private:
    double residual_;
    std::size_t iterations_;
};

/// Monte-Carlo run produced no usable statistics. CLI exit code 5.
class StatisticalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Broken internal invariant; indicates a bug, not bad input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace quasirank
