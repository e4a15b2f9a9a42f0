#pragma once

#include "chow/ints.hpp"
#include "chow/matroid.hpp"

#include <string>
#include <vector>

namespace chow {

// Exact integer polynomial in one variable; coeffs[i] multiplies λ^i.
// Normalized: no trailing zero coefficients, the zero polynomial is empty.
struct CharPoly {
    std::vector<Int> coeffs;

    bool is_zero() const { return coeffs.empty(); }
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    Int coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(coeffs.size())) ? coeffs[static_cast<size_t>(i)]
                                                               : Int(0);
    }
    Int eval(const Int& x) const;
    void trim();
    std::string to_string(const std::string& var = "λ") const;

    bool operator==(const CharPoly& o) const { return coeffs == o.coeffs; }
    bool operator!=(const CharPoly& o) const { return !(*this == o); }
};

// Reference implementation: full Whitney sum over all subsets of the ground
// set, χ_M(λ) = Σ_S (-1)^|S| λ^(rk(E)-rk(S)). Loops cancel the sum to zero.
CharPoly char_poly(const Matroid& m);

// Deletion-contraction recursion, memoized on the flat-lattice signature.
CharPoly char_poly_deletion_contraction(const Matroid& m);

// Möbius-function formula over the lattice of flats (loopy input gives zero).
CharPoly char_poly_mobius(const Matroid& m);

// χ_M / (λ - 1), exact division. Rejects loopy input.
CharPoly reduced_char_poly(const Matroid& m);

// μ^a = (-1)^a times the λ^(r-a) coefficient of the reduced polynomial,
// for 0 <= a <= r where r = rank - 1. Rejects loopy input.
Int mu(const Matroid& m, int a);
std::vector<Int> mu_vector(const Matroid& m);

} // namespace chow
