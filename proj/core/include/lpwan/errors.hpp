#pragma once

#include <stdexcept>
#include <string>

namespace lpwan {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A document could not be decoded (missing/ill-typed field, bad JSON).
struct ParseError : Error {
    using Error::Error;
};

// A decoded object violates an invariant (unsorted schedule, empty band list, ...).
struct ValidationError : Error {
    using Error::Error;
};

// A numeric input is outside the mathematical domain of an operation.
struct DomainError : Error {
    using Error::Error;
};

// A (technology, region) pair or similar lookup key has no tabulated entry.
struct NotAvailableError : Error {
    using Error::Error;
};

}  // namespace lpwan
