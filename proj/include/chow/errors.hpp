#pragma once

#include "chow/subset.hpp"

#include <stdexcept>
#include <string>

namespace chow {

// Base class for everything this library throws deliberately.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid input: malformed arguments, domain violations, parse failures.
struct InputError : Error {
    using Error::Error;
};

// A lattice-of-flats axiom failed during validation. Carries a witness:
//   axiom 1: flats flat_a, flat_b whose intersection is not a flat;
//   axiom 2: flat flat_a and element whose minimal-cover count is not one.
struct AxiomError : InputError {
    int axiom;
    Mask flat_a = 0;
    Mask flat_b = 0;
    int element = -1;

    AxiomError(int which, Mask a, Mask b, int e, const std::string& msg)
        : InputError(msg), axiom(which), flat_a(a), flat_b(b), element(e) {}
};

// The full ground set is missing from a proposed flat collection.
struct MissingTopError : InputError {
    using InputError::InputError;
};

// A resource guard refused the computation (problem size over the cap).
struct GuardError : Error {
    using Error::Error;
};

// Two supposedly-equal computation paths disagreed.
struct VerificationError : Error {
    using Error::Error;
};

} // namespace chow
