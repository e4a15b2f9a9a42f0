#include "chow/volume.hpp"

#include "chow/degree.hpp"
#include "chow/divisor.hpp"
#include "chow/errors.hpp"

#include <algorithm>
#include <functional>

namespace chow {

namespace {

Rat lookup(const SupportVector& x, Mask s) {
    auto it = x.find(s);
    return it == x.end() ? Rat(0) : it->second;
}

void check_support_keys(int n, const SupportVector& x, const char* who) {
    if (n < 1 || n > kMaxGroundSet) throw InputError(std::string(who) + ": bad ground size");
    const Mask full = full_mask(n);
    for (auto& [s, v] : x) {
        if (s == 0) throw InputError(std::string(who) + ": x_∅ is implicitly 0, drop the key");
        if (s == full) throw InputError(std::string(who) + ": x_E is implicitly 0, drop the key");
        if (!subset_of(s, full))
            throw InputError(std::string(who) + ": key " + format_set(s) +
                             " is not a subset of the ground set");
    }
}

Rat rat_pow(const Rat& base, int e) {
    Rat out = 1;
    for (int i = 0; i < e; ++i) out *= base;
    return out;
}

} // namespace

Rat VolumePolynomial::eval(const SupportVector& x) const {
    Rat sum = 0;
    for (const VolumeTerm& t : terms) {
        Rat prod(t.coef);
        for (size_t i = 0; i < t.flag.size() && prod != 0; ++i)
            prod *= rat_pow(lookup(x, t.flag[i]), t.exps[i]);
        sum += prod;
    }
    if (boolean_case) sum /= Rat(factorial(denominator_factorial));
    return sum;
}

bool is_submodular(int n, const SupportVector& x, std::pair<Mask, Mask>* witness) {
    if (n < 1) throw InputError("is_submodular: bad ground size");
    if (n > 12)
        throw GuardError("is_submodular: all-pairs check over 2^" + std::to_string(n) +
                         " subsets refused, guard is n <= 12");
    check_support_keys(n, x, "is_submodular");
    const Mask full = full_mask(n);
    auto val = [&](Mask s) -> Rat {
        return (s == 0 || s == full) ? Rat(0) : lookup(x, s);
    };
    for (Mask a = 1; a <= full; ++a)
        for (Mask b = a; b <= full; ++b) {
            if (val(a) + val(b) < val(a & b) + val(a | b)) {
                if (witness) *witness = {a, b};
                return false;
            }
        }
    return true;
}

VolumePolynomial volume_polynomial(const Matroid& m, size_t max_terms) {
    require_loopless(m, "volume_polynomial");
    VolumePolynomial out;
    out.ground_size = m.ground_size();
    out.top_degree = m.top_degree();
    out.boolean_case = m.is_boolean();
    out.denominator_factorial = m.top_degree();

    const int r = m.top_degree();
    DegreeCache cache;
    size_t candidates = 0;

    std::vector<int> chain;  // flat indices, strictly nested
    std::vector<int> comp;   // matching positive exponents
    int used = 0;

    std::function<void()> emit = [&]() {
        if (++candidates > max_terms)
            throw GuardError("volume_polynomial: more than " + std::to_string(max_terms) +
                             " flag-composition terms");
        DivisorMonomial mono;
        for (size_t i = 0; i < chain.size(); ++i) mono.exps[chain[i]] = comp[i];
        Int deg = deg_monomial(m, mono, nullptr, &cache);
        if (deg == 0) return;
        VolumeTerm t;
        for (int idx : chain) t.flag.push_back(m.flat(idx));
        t.exps = comp;
        t.coef = multinomial(r, comp) * deg;
        out.terms.push_back(std::move(t));
    };

    // Chains ascend in canonical index order (rank-major), so extending past
    // the last index is enough.
    std::function<void(int)> rec = [&](int last_index) {
        if (used == r) {
            emit();
            return;
        }
        for (int i : m.proper_flats()) {
            if (i <= last_index) continue;
            if (last_index >= 0) {
                Mask prev = m.flat(chain.back());
                Mask cur = m.flat(i);
                if (prev == cur || !subset_of(prev, cur)) continue;
            }
            for (int d = 1; d <= r - used; ++d) {
                chain.push_back(i);
                comp.push_back(d);
                used += d;
                rec(i);
                used -= d;
                comp.pop_back();
                chain.pop_back();
            }
        }
    };
    if (r == 0) {
        emit(); // the empty product has degree 1
    } else {
        rec(-1);
    }
    return out;
}

Rat eval_volume(const Matroid& m, const SupportVector& x, Diagnostics* diag) {
    check_support_keys(m.ground_size(), x, "eval_volume");
    for (auto& [s, v] : x)
        if (v != 0 && !m.is_flat(s))
            throw InputError("eval_volume: " + format_set(s) + " is not a flat");
    VolumePolynomial poly = volume_polynomial(m);
    if (poly.boolean_case && m.ground_size() <= 12) {
        std::pair<Mask, Mask> w;
        if (!is_submodular(m.ground_size(), x, &w))
            warn_into(diag, "support vector is not submodular (witness " + format_set(w.first) +
                                ", " + format_set(w.second) +
                                "); the value has no polytope interpretation");
    }
    return poly.eval(x);
}

SupportVector minkowski_to_support(int n, const MinkowskiWeights& y) {
    if (n < 1) throw InputError("minkowski_to_support: bad ground size");
    if (n > 16)
        throw GuardError("minkowski_to_support: 2^" + std::to_string(n) +
                         " subsets refused, guard is n <= 16");
    const Mask full = full_mask(n);
    for (auto& [g, v] : y) {
        if (g == 0) throw InputError("minkowski_to_support: weights are indexed by nonempty sets");
        if (!subset_of(g, full))
            throw InputError("minkowski_to_support: key " + format_set(g) +
                             " is not a subset of the ground set");
        if (v < 0) throw InputError("minkowski_to_support: negative weight on " + format_set(g));
    }
    auto z = [&](Mask f) {
        Rat sum = 0;
        for (auto& [g, v] : y)
            if (subset_of(g, f)) sum += v;
        return sum;
    };
    const Rat z_full = z(full);
    SupportVector x;
    for (Mask f = 1; f < full; ++f) {
        Rat v = contains(f, 0) ? z_full - z(f) : -z(f);
        if (v != 0) x[f] = v;
    }
    if (n <= 12) {
        std::pair<Mask, Mask> w;
        if (!is_submodular(n, x, &w))
            throw std::logic_error("minkowski_to_support: output not submodular at " +
                                   format_set(w.first) + ", " + format_set(w.second) +
                                   "; this is a bug");
    }
    return x;
}

Rat postnikov_volume(int n, const MinkowskiWeights& y) {
    if (n < 1) throw InputError("postnikov_volume: bad ground size");
    if (n > 8)
        throw GuardError("postnikov_volume: guard is n <= 8");
    const Mask full = full_mask(n);
    std::vector<Mask> supp;
    std::vector<Rat> weight;
    for (auto& [g, v] : y) {
        if (g == 0) throw InputError("postnikov_volume: weights are indexed by nonempty sets");
        if (!subset_of(g, full))
            throw InputError("postnikov_volume: key " + format_set(g) +
                             " is not a subset of the ground set");
        if (v < 0) throw InputError("postnikov_volume: negative weight on " + format_set(g));
        if (v != 0) {
            supp.push_back(g);
            weight.push_back(v);
        }
    }
    const int tuple_len = n - 1;
    const int p = static_cast<int>(supp.size());
    if (p > 0) {
        Int multisets = binomial(p + tuple_len - 1, tuple_len);
        if (multisets > Int(20000000))
            throw GuardError("postnikov_volume: " + multisets.str() +
                             " support multisets, over the guard");
    }
    if (tuple_len == 0) return 1; // the empty tuple is valid; 1/0! = 1

    // Enumerate multisets over the support by counts; a multiset is valid iff
    // for every nonempty subset T of its distinct sets, |∪T| > Σ_{G∈T} count.
    // Ordered tuples per multiset: multinomial(n-1; counts).
    Rat total = 0;
    std::vector<int> counts(static_cast<size_t>(p), 0);
    std::function<void(int, int)> rec = [&](int from, int remaining) {
        if (remaining == 0) {
            std::vector<int> used_idx;
            for (int i = 0; i < p; ++i)
                if (counts[static_cast<size_t>(i)] > 0) used_idx.push_back(i);
            const int q = static_cast<int>(used_idx.size());
            for (Mask t = 1; t < (Mask(1) << q); ++t) {
                Mask uni = 0;
                int size = 0;
                for (int j = 0; j < q; ++j)
                    if (contains(t, j)) {
                        uni |= supp[static_cast<size_t>(used_idx[static_cast<size_t>(j)])];
                        size += counts[static_cast<size_t>(used_idx[static_cast<size_t>(j)])];
                    }
                if (popcount(uni) <= size) return;
            }
            std::vector<int> parts;
            Rat prod = 1;
            for (int i = 0; i < p; ++i)
                if (counts[static_cast<size_t>(i)] > 0) {
                    parts.push_back(counts[static_cast<size_t>(i)]);
                    prod *= rat_pow(weight[static_cast<size_t>(i)], counts[static_cast<size_t>(i)]);
                }
            total += Rat(multinomial(tuple_len, parts)) * prod;
            return;
        }
        if (from == p) return;
        for (int c = remaining; c >= 0; --c) {
            counts[static_cast<size_t>(from)] = c;
            rec(from + 1, remaining - c);
        }
        counts[static_cast<size_t>(from)] = 0;
    };
    rec(0, tuple_len);
    return total / Rat(factorial(tuple_len));
}

} // namespace chow
