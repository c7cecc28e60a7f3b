#pragma once

#include <stdexcept>
#include <string>

namespace cvl {

/// Input violates a documented precondition (bad discriminant, wrong level, ...).
class PreconditionError : public std::invalid_argument {
public:
    explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical computation could not reach the requested accuracy.
class PrecisionError : public std::runtime_error {
public:
    explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

/// An internal consistency check failed; results must not be trusted.
class InvariantViolation : public std::logic_error {
public:
    explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

} // namespace cvl
