#pragma once

#include <stdexcept>
#include <string>

namespace pam {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Caller broke a documented precondition.
struct ContractViolation : Error { using Error::Error; };

// Malformed input file; message carries the line number.
struct ParseError : Error { using Error::Error; };

// A value could not be factorized over the dictionary's prime set.
struct DecodeError : Error { using Error::Error; };

// Checked 64-bit cell arithmetic overflowed; message names (k, row, col).
struct OverflowError : Error { using Error::Error; };

// Prime generation ran out of representable range.
struct CapacityError : Error { using Error::Error; };

// A configured growth cap was hit (path explosion, dictionary size).
struct ResourceLimitError : Error { using Error::Error; };

// Semantically invalid input (empty graph, non-finite target, ...).
struct InputError : Error { using Error::Error; };

} // namespace pam
