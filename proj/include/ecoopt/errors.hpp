#ifndef ECOOPT_ERRORS_HPP
#define ECOOPT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ecoopt {

// Base class for every error the library raises on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numeric input outside the mathematical domain of an operation
// (non-finite values, negative arguments to sqrt/log terms).
class DomainError : public Error {
public:
    using Error::Error;
};

// A caller violated a stated precondition (invalid weights, point outside
// bounds, out-of-range configuration values).
class ContractError : public Error {
public:
    using Error::Error;
};

// Evaluation at a point where a derivative does not exist.
class SingularityError : public DomainError {
public:
    using DomainError::DomainError;
};

// A generator or pipeline specification cannot be satisfied.
class SpecError : public Error {
public:
    using Error::Error;
};

// Fitting failed (all-missing column, rank-deficient design, ...).
class FitError : public Error {
public:
    using Error::Error;
};

// The corner oracle was asked about a non-monotone objective.
class OracleInapplicableError : public Error {
public:
    using Error::Error;
};

// A statistic is undefined for the given sample (constant input,
// zero-variance differences, zero baseline).
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

// Filesystem failure while reading or writing artifacts.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace ecoopt

#endif // ECOOPT_ERRORS_HPP
