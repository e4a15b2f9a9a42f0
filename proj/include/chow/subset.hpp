#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace chow {

// Subsets of a ground set of at most 64 elements, packed into one machine
// word. Element i corresponds to bit i. Indexing is 0-based throughout.
using Mask = std::uint64_t;

constexpr int kMaxGroundSet = 64;

inline Mask full_mask(int n) {
    return n == 64 ? ~Mask{0} : ((Mask{1} << n) - 1);
}

inline int popcount(Mask m) { return std::popcount(m); }

inline bool contains(Mask set, int e) { return (set >> e) & 1u; }

inline bool subset_of(Mask a, Mask b) { return (a & ~b) == 0; }

inline std::vector<int> elements_of(Mask m) {
    std::vector<int> out;
    while (m) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

inline Mask mask_of(const std::vector<int>& elems) {
    Mask m = 0;
    for (int e : elems) m |= Mask{1} << e;
    return m;
}

// Relabels the elements of m (a subset of universe) to 0..|universe|-1,
// keeping their relative order.
inline Mask compress_mask(Mask m, Mask universe) {
    Mask out = 0;
    int pos = 0;
    while (universe) {
        int e = std::countr_zero(universe);
        if (contains(m, e)) out |= Mask{1} << pos;
        ++pos;
        universe &= universe - 1;
    }
    return out;
}

// Inverse of compress_mask: place bit j of compact on the j-th element of universe.
inline Mask expand_mask(Mask compact, Mask universe) {
    Mask out = 0;
    int pos = 0;
    while (universe) {
        int e = std::countr_zero(universe);
        if (contains(compact, pos)) out |= Mask{1} << e;
        ++pos;
        universe &= universe - 1;
    }
    return out;
}

// "{0,2,5}" rendering; the empty set prints as "{}".
inline std::string format_set(Mask m) {
    std::string s = "{";
    bool first = true;
    for (int e : elements_of(m)) {
        if (!first) s += ',';
        s += std::to_string(e);
        first = false;
    }
    s += '}';
    return s;
}

} // namespace chow
