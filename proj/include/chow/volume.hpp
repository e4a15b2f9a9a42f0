#pragma once

#include "chow/diagnostics.hpp"
#include "chow/ints.hpp"
#include "chow/matroid.hpp"
#include "chow/subset.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace chow {

// x_F per proper nonempty flat (Boolean case: per proper nonempty subset).
// Missing keys are 0; the ∅ and E values are implicitly 0 and must not appear
// as keys. Interchange files carry integer values; rational values are fine
// internally, evaluation is exact either way.
using SupportVector = std::map<Mask, Rat>;

// y_G per nonempty subset G of the ground set, all nonnegative.
using MinkowskiWeights = std::map<Mask, Rat>;

struct VolumeTerm {
    std::vector<Mask> flag; // strictly increasing proper nonempty flats
    std::vector<int> exps;  // positive, sums to the top degree
    Int coef;               // multinomial factor times the monomial degree
};

// deg((Σ_F x_F D_F)^r) expanded over flags with exponent compositions. The
// factorial normalization is metadata: eval applies 1/denominator_factorial!
// only when boolean_case is set (the polytope volume convention); general
// matroids report the raw degree.
struct VolumePolynomial {
    int ground_size = 0;
    int top_degree = 0;
    bool boolean_case = false;
    int denominator_factorial = 0; // r, which is n-1 in the Boolean case
    std::vector<VolumeTerm> terms; // deterministic order, zero coefs omitted

    Rat eval(const SupportVector& x) const;
};

// Checks x_A + x_B >= x_{A∩B} + x_{A∪B} over all pairs of nonempty subsets
// of [n], with x_∅ = x_[n] = 0. On failure fills *witness with an offending
// pair. Guarded at n <= 12.
bool is_submodular(int n, const SupportVector& x,
                   std::pair<Mask, Mask>* witness = nullptr);

VolumePolynomial volume_polynomial(const Matroid& m, size_t max_terms = 200000);

// Evaluates the volume polynomial at x. Boolean case divides by (n-1)! and,
// within the is_submodular guard, warns into diag when x is not submodular
// (the number is still well defined, the polytope reading is not).
Rat eval_volume(const Matroid& m, const SupportVector& x,
                Diagnostics* diag = nullptr);

// Change of variables z_F = Σ_{G ⊆ F} y_G, then x_F = z_[n] - z_F when
// 0 ∈ F and x_F = -z_F otherwise, over proper nonempty subsets F. The output
// is submodular; that is asserted within the is_submodular guard.
SupportVector minkowski_to_support(int n, const MinkowskiWeights& y);

// (1/(n-1)!) Σ y_{G_1}···y_{G_{n-1}} over ordered tuples of nonempty subsets
// in which every subcollection's union is larger than the subcollection.
// Iterates multisets over the support of y only. Guarded at n <= 8 and by a
// multiset-count cap.
Rat postnikov_volume(int n, const MinkowskiWeights& y);

} // namespace chow
