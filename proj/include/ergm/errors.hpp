#pragma once

#include <stdexcept>
#include <string>

namespace ergm {

// Argument outside the mathematical domain of an operation (x outside [0,1],
// p < 2, n < 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Base class for failures of an iterative numerical procedure.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConvergenceError : public NumericError {
public:
    using NumericError::NumericError;
};

class BracketError : public NumericError {
public:
    using NumericError::NumericError;
};

// Laplace coefficient |b2| or |b4| too small to divide by.
class SingularCoefficientError : public NumericError {
public:
    using NumericError::NumericError;
};

// Two maximizers so close that a closed form is ill-conditioned.
class DegenerateError : public NumericError {
public:
    using NumericError::NumericError;
};

// Request exceeds a configured size cap.
class ResourceError : public std::length_error {
public:
    using std::length_error::length_error;
};

}  // namespace ergm
