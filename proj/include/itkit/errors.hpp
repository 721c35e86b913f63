#pragma once

#include <stdexcept>
#include <string>

namespace itkit {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    using Error::Error;
};

// A vertex class of the input partition is empty; no transversal can exist.
struct EmptyClassError : Error {
    using Error::Error;
};

struct InfeasibleParamsError : Error {
    using Error::Error;
};

struct PreconditionViolationError : Error {
    using Error::Error;
};

struct BudgetExceededError : Error {
    using Error::Error;
};

// A produced certificate failed its own post-hoc checks; indicates a bug,
// never expected on valid input.
struct CertificateViolationError : Error {
    using Error::Error;
};

struct CoreStructureViolationError : Error {
    using Error::Error;
};

struct InternalInvariantViolationError : Error {
    using Error::Error;
};

} // namespace itkit
