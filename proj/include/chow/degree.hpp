#pragma once

#include "chow/charpoly.hpp"
#include "chow/diagnostics.hpp"
#include "chow/divisor.hpp"
#include "chow/matroid.hpp"

#include <map>
#include <utility>
#include <vector>

namespace chow {

// Memo for μ-vectors of interval minors [F, G], keyed by flat masks of the
// ambient matroid. One cache belongs to one matroid; it is not shared across
// different matroids or threads.
struct DegreeCache {
    std::map<std::pair<Mask, Mask>, std::vector<Int>> interval_mu;
};

// μ-vector of the interval minor [f, g] (f ⊊ g flats), cached when a cache
// is supplied.
const std::vector<Int>& interval_mu_vector(const Matroid& m, Mask f, Mask g,
                                           DegreeCache& cache);

// deg(ψ_0^a ψ_∞^b) = μ^a(M) when a + b = r, else 0.
Int deg_psi_powers(const Matroid& m, int a, int b);

// Degree of one flag/psi term: coefficient times the product over intervals
// [F_i, F_{i+1}] of deg(ψ_0^{plus} ψ_∞^{minus}) computed in the interval
// minor. Zero whenever any interval's exponents miss its top degree.
Int deg_flag_mixed(const Matroid& m, const FlagPsiTerm& term, DegreeCache* cache = nullptr);

// Rewrites a divisor monomial as a sum of flag/psi terms: D_E factors are
// replaced by -ψ_∞ first, then repeated proper factors expand through
// D_F^2 = D_F(-ψ_F^- - ψ_F^+) binomially. Incomparable flats give an empty
// expansion. Works in any degree.
PsiExpansion expand_monomial(const Matroid& m, const DivisorMonomial& mono);

// Closed-form degree of a divisor monomial of total degree r. Off top degree
// the result is 0 with a warning; incomparable flats or an exponent pattern
// outside the feasible window give plain 0.
Int deg_monomial(const Matroid& m, const DivisorMonomial& mono, Diagnostics* diag = nullptr,
                 DegreeCache* cache = nullptr);

// deg(ψ_{F_1}^- ··· ψ_{F_r}^-) for exactly r nonempty flats: 1 when every
// nonempty subcollection has union of rank greater than its size, else 0.
Int deg_psi_minus_product(const Matroid& m, const std::vector<Mask>& flats);

} // namespace chow
