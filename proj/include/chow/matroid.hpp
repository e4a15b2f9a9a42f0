#pragma once

#include "chow/errors.hpp"
#include "chow/ints.hpp"
#include "chow/subset.hpp"

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace chow {

// A matroid stored as its lattice of flats. Flats are kept in canonical
// order: rank ascending, then numeric bitset value ascending. Index 0 is the
// bottom flat (the set of loops; the empty set iff the matroid is loopless)
// and the last index is the full ground set E.
//
// Ground sets are capped at 64 elements so subsets fit in one machine word.
class Matroid {
public:
    int ground_size() const { return n_; }
    Mask ground_mask() const { return full_mask(n_); }
    int num_flats() const { return static_cast<int>(flats_.size()); }
    Mask flat(int i) const { return flats_[static_cast<size_t>(i)]; }
    int flat_rank(int i) const { return ranks_[static_cast<size_t>(i)]; }

    // rk(E). The top nonzero Chow degree is rank() - 1.
    int rank() const { return ranks_.back(); }
    int top_degree() const { return rank() - 1; }

    // -1 when the mask is not a flat.
    int index_of(Mask f) const {
        auto it = index_.find(f);
        return it == index_.end() ? -1 : it->second;
    }
    bool is_flat(Mask f) const { return index_.count(f) != 0; }

    // Indices of the flats covering flat i (minimal flats strictly above it).
    const std::vector<int>& covers(int i) const { return covers_[static_cast<size_t>(i)]; }

    // Smallest flat containing s.
    Mask closure(Mask s) const;
    int rank_of(Mask s) const;

    Mask loops() const { return flats_.front(); }
    bool loopless() const { return flats_.front() == 0; }
    Mask coloops() const;
    bool is_simple() const;
    bool is_boolean() const { return n_ <= 20 && num_flats() == (1 << n_); }

    // Indices of the proper flats L \ {empty set, E}, in canonical order.
    const std::vector<int>& proper_flats() const { return proper_; }

    // Optional display names for ground-set elements; internal indices stay 0-based.
    const std::optional<std::vector<std::string>>& labels() const { return labels_; }

    bool operator==(const Matroid& o) const { return n_ == o.n_ && flats_ == o.flats_; }
    bool operator!=(const Matroid& o) const { return !(*this == o); }

private:
    int n_ = 0;
    std::vector<Mask> flats_;
    std::vector<int> ranks_;
    std::vector<std::vector<int>> covers_;
    std::vector<int> proper_;
    std::unordered_map<Mask, int> index_;
    std::optional<std::vector<std::string>> labels_;

    friend Matroid from_flats(int, std::vector<Mask>, std::optional<std::vector<std::string>>);
};

// Validates the two lattice-of-flats axioms exactly:
//   (1) the family is closed under pairwise intersection,
//   (2) for every flat F, each element outside F lies in exactly one minimal
//       flat strictly containing F.
// E itself must be present. Ranks are assigned by longest-chain layering.
// Throws AxiomError / MissingTopError with witnesses on failure.
Matroid from_flats(int n, std::vector<Mask> flats,
                   std::optional<std::vector<std::string>> labels = std::nullopt);
Matroid from_flats(int n, const std::vector<std::vector<int>>& flats);

// U_{rank,n}: every subset of size < rank is a flat, plus E.
Matroid from_uniform(int rank, int n);

// Boolean matroid: every subset is a flat.
Matroid from_boolean(int n);

// Graphic matroid of an undirected multigraph (self-loops allowed).
// rk(S) = n_vertices - #components(V, S).
Matroid from_graph(int n_vertices, const std::vector<std::pair<int, int>>& edges);

// Column matroid of a rows x cols matrix (row-major entries) over GF(p) for
// prime p, or over the rationals when prime == nullopt.
Matroid from_matrix(int rows, int cols, const std::vector<Int>& entries,
                    std::optional<int> prime);

// Restriction M|_S: flats {F ∩ S}, ground set relabelled to 0..|S|-1 keeping
// element order.
Matroid restrict_to(const Matroid& m, Mask s);

// Contraction M/F for a flat F: flats {H \ F : H ⊇ F}, relabelled likewise.
// Non-flat arguments are rejected; arbitrary-set contraction is out of scope.
Matroid contract(const Matroid& m, Mask f);

// (M|_G)/F for flats F ⊆ G, computed directly from the interval [F, G].
Matroid interval_minor(const Matroid& m, Mask f, Mask g);

// Drops loops, then keeps the least-index element of each rank-1 flat. The
// lattice of flats is unchanged up to the element identification.
Matroid simplify(const Matroid& m);

// Möbius function of the lattice of flats on the interval [f, g].
Int mobius(const Matroid& m, Mask f, Mask g);

// Throws InputError unless m is loopless (Chow-ring operations need this).
void require_loopless(const Matroid& m, const char* who);

namespace detail {

// Contraction by an arbitrary subset: flats {H \ S : H ∈ L, H ⊇ S}. Used by
// the deletion-contraction recursion, where single elements need not be flats.
Matroid contract_subset(const Matroid& m, Mask s);

// All flats of the matroid with the given rank function, generated by
// closure search from cl(empty). rank_fn must be a genuine matroid rank.
std::vector<Mask> flats_from_rank_fn(int n, const std::function<int(Mask)>& rank_fn);

} // namespace detail

} // namespace chow
