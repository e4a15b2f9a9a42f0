#pragma once

#include "chow/ints.hpp"
#include "chow/matroid.hpp"

#include <map>
#include <vector>

namespace chow {

// Integer combination of divisor classes D_F. Keys are flat indices in the
// owning matroid's canonical order; the top flat E is a legal key (the class
// D_E), the bottom flat is not. Zero coefficients are never stored.
struct DivisorCombination {
    std::map<int, Int> coeffs;

    void add(int flat_index, const Int& c) {
        if (c == 0) return;
        auto [it, fresh] = coeffs.emplace(flat_index, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) coeffs.erase(it);
        }
    }
    DivisorCombination& operator+=(const DivisorCombination& o) {
        for (auto& [k, v] : o.coeffs) add(k, v);
        return *this;
    }
    DivisorCombination& operator-=(const DivisorCombination& o) {
        for (auto& [k, v] : o.coeffs) add(k, -v);
        return *this;
    }
    bool operator==(const DivisorCombination& o) const { return coeffs == o.coeffs; }
};

// Product of divisor classes with positive exponents, keyed like above.
struct DivisorMonomial {
    std::map<int, int> exps;

    int degree() const {
        int d = 0;
        for (auto& [k, e] : exps) d += e;
        return d;
    }
};

// One term of a psi expansion along the flag
//   ∅ = F_0 ⊊ F_1 ⊊ ... ⊊ F_k ⊊ F_{k+1} = E,
// namely coefficient · D_{F_1}···D_{F_k} · Π_i (ψ_{F_i}^+)^{plus_exp[i]}
//                                       · Π_i (ψ_{F_{i+1}}^-)^{minus_exp[i]},
// with both exponent vectors indexed by interval i = 0..k.
struct FlagPsiTerm {
    std::vector<int> flag; // interior flats F_1..F_k as canonical indices
    std::vector<int> plus_exp;
    std::vector<int> minus_exp;
    Int coefficient = 1;

    int total_psi_degree() const {
        int d = 0;
        for (int a : plus_exp) d += a;
        for (int b : minus_exp) d += b;
        return d;
    }
};

struct PsiExpansion {
    std::vector<FlagPsiTerm> terms;
};

// ψ_F^- = Σ_{G ∈ L*, e ∈ G} D_G - Σ_{G ∈ L*, G ⊇ F} D_G  (F a flat, e ∈ E).
// The class is independent of e modulo the linear relations; the coefficient
// vector is not, so e is explicit here.
DivisorCombination psi_minus(const Matroid& m, Mask f, int e);

// ψ_F^+ = Σ_{G ∈ L*, e ∉ G} D_G - Σ_{G ∈ L*, G ⊆ F} D_G.
DivisorCombination psi_plus(const Matroid& m, Mask f, int e);

// ψ_0 = ψ_∅^+ and ψ_∞ = ψ_E^- with the canonical choice e = 0.
DivisorCombination psi_zero(const Matroid& m);
DivisorCombination psi_infinity(const Matroid& m);

// Pullback-style homomorphism attached to a nonempty S ⊆ E: sends the class
// D_G of the restriction M|_S to Σ D_{G'} over proper flats G' of M with
// G ⊆ G' ⊆ G ∪ (E∖S). Input coefficients live over restrict_to(m, s).
DivisorCombination rho(const Matroid& m, Mask s, const DivisorCombination& over_restriction);

} // namespace chow
