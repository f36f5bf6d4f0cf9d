#pragma once

#include <stdexcept>
#include <limits>
#include <string>

namespace meancross {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The distribution has no finite expectation for the given parameters.
class MeanUndefinedError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Throws DomainError unless x is finite and strictly positive.
inline double require_positive(double x, const char* what) {
    if (!(x > 0.0) || x == std::numeric_limits<double>::infinity()) {
        throw DomainError(std::string(what) + " must be finite and > 0, got " + std::to_string(x));
    }
    return x;
}

}  // namespace meancross
