#pragma once

#include <stdexcept>
#include <string>

namespace qtl {

// Base for every data/validation failure raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Grid fails the fourier-real or hermitian invariant it was handed in under.
struct SymmetryError : Error {
    using Error::Error;
};

struct DimensionError : Error {
    using Error::Error;
};

// Argument outside the mathematical domain (Re s <= 1, a_1 = 0, ...).
struct DomainError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

// Average over an empty set of zero ordinates.
struct EmptyRangeError : Error {
    using Error::Error;
};

// NaN or overflow during time integration.
struct NumericalError : Error {
    using Error::Error;
};

}  // namespace qtl
