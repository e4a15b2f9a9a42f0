#pragma once

#include "chow/degree.hpp"
#include "chow/divisor.hpp"
#include "chow/ints.hpp"
#include "chow/matroid.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace chow {

// A degree-k monomial in the proper-flat generators X_F, stored as the
// nondecreasing list of flat indices with multiplicity (empty = the unit).
using ProperMonomial = std::vector<int>;

// Homogeneous integer polynomial in the X_F.
using FlatPoly = std::map<ProperMonomial, Int>;

// Rewrites a divisor monomial as a FlatPoly, substituting each D_E factor by
// -Σ_{0 ∈ F} X_F (the linear relation with the canonical element 0).
FlatPoly to_poly(const Matroid& m, const DivisorMonomial& mono);

// Same substitution for a degree-1 combination.
std::map<int, Int> to_proper_linear(const Matroid& m, const DivisorCombination& c);

// Product of degree-1 combinations as a FlatPoly.
FlatPoly poly_product(const Matroid& m, const std::vector<DivisorCombination>& factors);

// One graded slice of the presentation Z[X_F]/(I + J): the degree-k monomial
// span together with an echelonized basis of the degree-k slice of the ideal,
//   { (deg k-2 monomial) * X_{F1} X_{F2} : F1, F2 incomparable } ∪
//   { (deg k-1 monomial) * (Σ_{0∈F} X_F - Σ_{f∈F} X_F) : f ∈ E \ {0} }.
// Reduction modulo the ideal is exact rational elimination; rows are kept as
// primitive integer vectors. Pivots are chosen by smallest magnitude, then
// lowest index.
class GradedPiece {
public:
    GradedPiece(const Matroid& m, int k, size_t max_monomials);

    int k() const { return k_; }
    int quotient_rank() const { return quotient_rank_; }
    const std::vector<ProperMonomial>& monomials() const { return monomials_; }
    const std::vector<int>& free_columns() const { return free_cols_; }

    int monomial_index(const ProperMonomial& mono) const;

    // Canonical representative modulo the ideal slice; the result is
    // supported on the free columns only.
    std::vector<Rat> reduce(std::vector<Rat> dense) const;
    std::vector<Rat> reduce(const FlatPoly& poly) const;

private:
    struct Row {
        std::vector<std::pair<int, Int>> entries; // sorted by column
        int pivot_col = -1;
    };

    int k_;
    int quotient_rank_ = 0;
    std::vector<ProperMonomial> monomials_;
    std::map<ProperMonomial, int> index_;
    std::vector<Row> pivot_rows_; // ascending pivot column
    std::vector<int> free_cols_;

    void echelonize(std::vector<Row>& rows);
};

// Feichtner-Yuzvinsky basis element in normalized form: the flag always ends
// with E (exps.back() may be 0), interior exponents satisfy
// 1 <= d_i <= rk(F_i) - rk(F_{i-1}) - 1 and the top exponent satisfies
// 0 <= d_l <= r - rk(F_{l-1}).
struct FYBasisElement {
    std::vector<int> flats; // canonical indices, strictly nested, last = E
    std::vector<int> exps;

    int degree() const;
    FYBasisElement hat(const Matroid& m) const;
    // (d̂_l, rk F_{l-1}, d̂_{l-1}, ..., rk F_1, d̂_1), zero-padded.
    std::vector<int> delta(const Matroid& m) const;
    DivisorMonomial monomial() const; // drops the E factor when its exponent is 0
};

struct PairingCertificate {
    int k = 0;
    std::vector<std::string> rows; // basis monomials in row order
    std::vector<std::vector<Int>> matrix;
    Int det = 0;
    bool triangular = false;
    std::vector<Int> diag;
    int spot_checks_run = 0;
};

// Fraction-free determinant of an integer matrix.
Int determinant(std::vector<std::vector<Int>> a);

// Brute-force model of the Chow ring of one matroid. Graded slices are built
// lazily and cached. Everything here is independent of the closed-form degree
// path: degrees come out of linear algebra over the presentation.
class Oracle {
public:
    explicit Oracle(Matroid m, size_t max_monomials = 200000);

    const Matroid& matroid() const { return m_; }
    const GradedPiece& graded(int k);

    // Degree of a top-degree divisor monomial by reduction onto a reference
    // complete-flag monomial.
    Int degree(const DivisorMonomial& mono);
    // Same for an arbitrary homogeneous degree-r polynomial.
    Int degree_of(const FlatPoly& poly);

    // True when the polynomial reduces to zero in its graded slice.
    bool reduces_to_zero(int k, const FlatPoly& poly);

    std::vector<FYBasisElement> fy_basis(int k) const;

    // Integer coordinates of a degree-k polynomial in the FY basis. Aborts
    // loudly when the coordinates come out non-integral.
    std::vector<Int> reduce_to_fy(int k, const FlatPoly& poly);

    // Pairing matrix of fy_basis(k) against the hatted complements, entries
    // by the closed-form degree with a fraction of entries spot-checked
    // against this oracle. A spot-check mismatch throws.
    PairingCertificate pairing(int k, double spot_fraction = 0.1, std::uint64_t seed = 0);

    // True iff |det| = 1. A unimodular-but-not-triangular certificate is an
    // anomaly worth reporting, not a failure.
    bool verify_poincare(int k, PairingCertificate* cert_out = nullptr);

    // Canonical reference: the lexicographically least complete flag.
    DivisorMonomial reference_flag_monomial() const;

private:
    Matroid m_;
    size_t max_monomials_;
    std::map<int, GradedPiece> pieces_;
    std::vector<Rat> reference_reduced_; // cached canonical rep of the reference

    std::vector<Rat> reduced_top(const FlatPoly& poly);
};

} // namespace chow
