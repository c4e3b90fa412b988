#pragma once

/**
 * @file errors.hpp
 * @brief Exception hierarchy shared by every flagmot module.
 *
 * - DomainError: a precondition on the input values failed (bad prime,
 *   malformed flag, partial index table, ...).
 * - OverflowError: an exact integer computation left the int64 range.
 * - ModelError: two classes from different field models were combined.
 * - InternalInvariantError: a proven identity failed at runtime. This
 *   means an implementation bug or an abstract model outside the axioms.
 */

#include <stdexcept>
#include <string>

namespace flagmot {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error {
    using Error::Error;
};

struct OverflowError : DomainError {
    using DomainError::DomainError;
};

struct ModelError : Error {
    using Error::Error;
};

struct InternalInvariantError : Error {
    using Error::Error;
};

}  // namespace flagmot
