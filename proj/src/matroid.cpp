#include "chow/matroid.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <queue>
#include <unordered_set>

namespace chow {

namespace {

// Construction guard: lattice validation is quadratic in the flat count, so
// refuse sizes where it would grind.
constexpr size_t kMaxFlats = 100000;

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

} // namespace

Matroid from_flats(int n, std::vector<Mask> flats,
                   std::optional<std::vector<std::string>> labels) {
    if (n < 1) throw InputError("from_flats: ground set must be nonempty");
    if (n > kMaxGroundSet)
        throw InputError("from_flats: ground sets are capped at 64 elements");
    if (labels && static_cast<int>(labels->size()) != n)
        throw InputError("from_flats: label count does not match ground-set size");

    const Mask full = full_mask(n);
    for (Mask f : flats)
        if (!subset_of(f, full))
            throw InputError("from_flats: flat " + format_set(f) +
                             " is not a subset of the ground set");

    std::sort(flats.begin(), flats.end(), [](Mask a, Mask b) {
        int pa = popcount(a), pb = popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    flats.erase(std::unique(flats.begin(), flats.end()), flats.end());

    if (flats.empty() || flats.back() != full)
        throw MissingTopError("from_flats: the full ground set must be a flat");
    if (flats.size() > kMaxFlats)
        throw GuardError("from_flats: lattice has " + std::to_string(flats.size()) +
                         " flats, over the construction guard of " +
                         std::to_string(kMaxFlats));

    const int nf = static_cast<int>(flats.size());
    std::unordered_set<Mask> flat_set(flats.begin(), flats.end());

    // Axiom 1: closure under pairwise intersection.
    for (int i = 0; i < nf; ++i)
        for (int j = i + 1; j < nf; ++j) {
            Mask meet = flats[i] & flats[j];
            if (!flat_set.count(meet))
                throw AxiomError(1, flats[i], flats[j], -1,
                                 "flat axiom 1 violated: " + format_set(flats[i]) +
                                     " ∩ " + format_set(flats[j]) + " = " +
                                     format_set(meet) + " is not a flat");
        }

    // Covers: minimal flats strictly above each flat. Candidates appear in
    // ascending popcount order, so a non-minimal candidate always has an
    // already-found cover strictly below it.
    std::vector<std::vector<int>> covers(flats.size());
    for (int i = 0; i < nf; ++i) {
        for (int j = 0; j < nf; ++j) {
            if (flats[i] == flats[j] || !subset_of(flats[i], flats[j])) continue;
            bool minimal = true;
            for (int c : covers[static_cast<size_t>(i)])
                if (subset_of(flats[static_cast<size_t>(c)], flats[static_cast<size_t>(j)])) {
                    minimal = false;
                    break;
                }
            if (minimal) covers[static_cast<size_t>(i)].push_back(j);
        }
    }

    // Axiom 2: every element outside F lies in exactly one cover of F.
    for (int i = 0; i < nf; ++i) {
        for (int e = 0; e < n; ++e) {
            if (contains(flats[static_cast<size_t>(i)], e)) continue;
            int hits = 0;
            for (int c : covers[static_cast<size_t>(i)])
                if (contains(flats[static_cast<size_t>(c)], e)) ++hits;
            if (hits != 1)
                throw AxiomError(2, flats[static_cast<size_t>(i)], 0, e,
                                 "flat axiom 2 violated: element " + std::to_string(e) +
                                     " lies in " + std::to_string(hits) +
                                     " minimal flats strictly containing " +
                                     format_set(flats[static_cast<size_t>(i)]));
        }
    }

    // Ranks by longest-chain layering; valid axioms make the lattice graded.
    std::vector<int> ranks(flats.size(), 0);
    for (int i = 0; i < nf; ++i) {
        int r = 0;
        for (int j = 0; j < i; ++j)
            if (flats[j] != flats[i] && subset_of(flats[j], flats[i]))
                r = std::max(r, ranks[static_cast<size_t>(j)] + 1);
        ranks[static_cast<size_t>(i)] = r;
    }
    for (int i = 0; i < nf; ++i)
        for (int c : covers[static_cast<size_t>(i)])
            if (ranks[static_cast<size_t>(c)] != ranks[static_cast<size_t>(i)] + 1)
                throw std::logic_error("from_flats: validated lattice is not graded");

    // Canonical order: rank ascending, then bitset value ascending.
    std::vector<int> perm(flats.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](int a, int b) {
        int ra = ranks[static_cast<size_t>(a)], rb = ranks[static_cast<size_t>(b)];
        return ra != rb ? ra < rb : flats[static_cast<size_t>(a)] < flats[static_cast<size_t>(b)];
    });
    std::vector<int> where(flats.size());
    for (int i = 0; i < nf; ++i) where[static_cast<size_t>(perm[static_cast<size_t>(i)])] = i;

    Matroid m;
    m.n_ = n;
    m.labels_ = std::move(labels);
    m.flats_.resize(flats.size());
    m.ranks_.resize(flats.size());
    m.covers_.resize(flats.size());
    for (int i = 0; i < nf; ++i) {
        int src = perm[static_cast<size_t>(i)];
        m.flats_[static_cast<size_t>(i)] = flats[static_cast<size_t>(src)];
        m.ranks_[static_cast<size_t>(i)] = ranks[static_cast<size_t>(src)];
        for (int c : covers[static_cast<size_t>(src)])
            m.covers_[static_cast<size_t>(i)].push_back(where[static_cast<size_t>(c)]);
        std::sort(m.covers_[static_cast<size_t>(i)].begin(), m.covers_[static_cast<size_t>(i)].end());
        m.index_[m.flats_[static_cast<size_t>(i)]] = i;
    }
    for (int i = 0; i < nf; ++i)
        if (m.flats_[static_cast<size_t>(i)] != 0 && m.flats_[static_cast<size_t>(i)] != full)
            m.proper_.push_back(i);
    return m;
}

Matroid from_flats(int n, const std::vector<std::vector<int>>& flats) {
    std::vector<Mask> masks;
    masks.reserve(flats.size());
    const Mask full = n >= 1 && n <= kMaxGroundSet ? full_mask(n) : 0;
    for (const auto& f : flats) {
        Mask m = 0;
        for (int e : f) {
            if (e < 0 || e >= n || !subset_of(Mask{1} << e, full))
                throw InputError("from_flats: element " + std::to_string(e) +
                                 " outside ground set of size " + std::to_string(n));
            m |= Mask{1} << e;
        }
        masks.push_back(m);
    }
    return from_flats(n, std::move(masks));
}

Mask Matroid::closure(Mask s) const {
    if (!subset_of(s, ground_mask()))
        throw InputError("closure: argument is not a subset of the ground set");
    // Canonical order is rank-ascending, and the flats containing s form a
    // sublattice whose unique minimum is the closure, so the first hit wins.
    for (Mask f : flats_)
        if (subset_of(s, f)) return f;
    throw std::logic_error("closure: no containing flat (missing top?)");
}

int Matroid::rank_of(Mask s) const { return flat_rank(index_of(closure(s))); }

Mask Matroid::coloops() const {
    Mask out = 0;
    for (int e = 0; e < n_; ++e)
        if (is_flat(ground_mask() & ~(Mask{1} << e))) out |= Mask{1} << e;
    return out;
}

bool Matroid::is_simple() const {
    if (!loopless()) return false;
    for (size_t i = 0; i < flats_.size(); ++i)
        if (ranks_[i] == 1 && popcount(flats_[i]) != 1) return false;
    return true;
}

Matroid from_uniform(int rank, int n) {
    if (n < 1) throw InputError("from_uniform: ground set must be nonempty");
    if (n > kMaxGroundSet) throw InputError("from_uniform: ground sets are capped at 64 elements");
    if (rank < 1 || rank > n) throw InputError("from_uniform: need 1 <= rank <= n");

    std::vector<Mask> flats;
    // All subsets of size < rank, enumerated per cardinality with Gosper's hack.
    for (int k = 0; k < rank; ++k) {
        if (k == 0) {
            flats.push_back(0);
            continue;
        }
        Mask v = (Mask{1} << k) - 1;
        const Mask limit = full_mask(n);
        while (v <= limit) {
            flats.push_back(v);
            if (flats.size() > kMaxFlats)
                throw GuardError("from_uniform: lattice over the construction guard");
            Mask t = v | (v - 1);
            if (t == ~Mask{0}) break;
            v = (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
        }
    }
    flats.push_back(full_mask(n));
    return from_flats(n, std::move(flats));
}

Matroid from_boolean(int n) {
    if (n < 1) throw InputError("from_boolean: ground set must be nonempty");
    if (n > 16)
        throw GuardError("from_boolean: 2^" + std::to_string(n) +
                         " flats is over the construction guard");
    std::vector<Mask> flats;
    flats.reserve(size_t{1} << n);
    for (Mask s = 0; s < (Mask{1} << n); ++s) flats.push_back(s);
    return from_flats(n, std::move(flats));
}

namespace detail {

std::vector<Mask> flats_from_rank_fn(int n, const std::function<int(Mask)>& rank_fn) {
    std::unordered_map<Mask, int> rank_memo;
    auto rk = [&](Mask s) {
        auto it = rank_memo.find(s);
        if (it != rank_memo.end()) return it->second;
        int r = rank_fn(s);
        rank_memo.emplace(s, r);
        return r;
    };
    // cl(S) = S together with every e that fails to raise the rank.
    auto cl = [&](Mask s) {
        int r = rk(s);
        Mask out = s;
        for (int e = 0; e < n; ++e)
            if (!contains(s, e) && rk(s | (Mask{1} << e)) == r) out |= Mask{1} << e;
        return out;
    };

    std::unordered_set<Mask> seen;
    std::queue<Mask> work;
    Mask bottom = cl(0);
    seen.insert(bottom);
    work.push(bottom);
    while (!work.empty()) {
        Mask f = work.front();
        work.pop();
        for (int e = 0; e < n; ++e) {
            if (contains(f, e)) continue;
            Mask c = cl(f | (Mask{1} << e));
            if (seen.insert(c).second) {
                if (seen.size() > kMaxFlats)
                    throw GuardError("flat generation over the construction guard");
                work.push(c);
            }
        }
    }
    return {seen.begin(), seen.end()};
}

} // namespace detail

Matroid from_graph(int n_vertices, const std::vector<std::pair<int, int>>& edges) {
    if (n_vertices < 1) throw InputError("from_graph: need at least one vertex");
    const int m = static_cast<int>(edges.size());
    if (m < 1) throw InputError("from_graph: need at least one edge");
    if (m > kMaxGroundSet) throw InputError("from_graph: at most 64 edges supported");
    for (auto [u, v] : edges)
        if (u < 0 || u >= n_vertices || v < 0 || v >= n_vertices)
            throw InputError("from_graph: edge endpoint out of range");

    // rk(S) = n_vertices - #components(V, S), via union-find.
    auto rank_fn = [&](Mask s) {
        std::vector<int> parent(static_cast<size_t>(n_vertices));
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int x) {
            while (parent[static_cast<size_t>(x)] != x) {
                parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
                x = parent[static_cast<size_t>(x)];
            }
            return x;
        };
        int components = n_vertices;
        for (int e : elements_of(s)) {
            int a = find(edges[static_cast<size_t>(e)].first);
            int b = find(edges[static_cast<size_t>(e)].second);
            if (a != b) {
                parent[static_cast<size_t>(a)] = b;
                --components;
            }
        }
        return n_vertices - components;
    };

    std::vector<Mask> flats;
    if (m <= 6) {
        // Small edge sets: test every subset for closedness directly.
        for (Mask s = 0; s < (Mask{1} << m); ++s) {
            int r = rank_fn(s);
            bool closed = true;
            for (int e = 0; e < m && closed; ++e)
                if (!contains(s, e) && rank_fn(s | (Mask{1} << e)) == r) closed = false;
            if (closed) flats.push_back(s);
        }
    } else {
        flats = detail::flats_from_rank_fn(m, rank_fn);
    }
    return from_flats(m, std::move(flats));
}

namespace {

int matrix_rank_mod_p(const std::vector<std::vector<int>>& cols, int p, Mask s) {
    std::vector<std::vector<int>> a;
    for (int c : elements_of(s)) a.push_back(cols[static_cast<size_t>(c)]);
    if (a.empty()) return 0;
    const size_t rows = a[0].size();
    size_t pivot_row = 0;
    int rank = 0;
    for (size_t col = 0; col < a.size() && pivot_row < rows; ++col) {
        size_t sel = rows;
        for (size_t r = pivot_row; r < rows; ++r)
            if (a[col][r] % p != 0) { sel = r; break; }
        if (sel == rows) continue;
        for (size_t c2 = 0; c2 < a.size(); ++c2) std::swap(a[c2][sel], a[c2][pivot_row]);
        int inv = 1;
        // Fermat inverse; p is prime and the pivot is nonzero mod p.
        {
            int base = ((a[col][pivot_row] % p) + p) % p, e = p - 2;
            long long acc = 1, b = base;
            while (e) {
                if (e & 1) acc = acc * b % p;
                b = b * b % p;
                e >>= 1;
            }
            inv = static_cast<int>(acc);
        }
        for (size_t r = pivot_row + 1; r < rows; ++r) {
            long long factor = static_cast<long long>(((a[col][r] % p) + p) % p) * inv % p;
            if (!factor) continue;
            for (size_t c2 = col; c2 < a.size(); ++c2) {
                long long v = a[c2][r] - factor * a[c2][pivot_row] % p;
                a[c2][r] = static_cast<int>(((v % p) + p) % p);
            }
        }
        ++pivot_row;
        ++rank;
    }
    return rank;
}

int matrix_rank_rational(const std::vector<std::vector<Int>>& cols, Mask s) {
    std::vector<std::vector<Rat>> a;
    for (int c : elements_of(s)) {
        std::vector<Rat> col(cols[static_cast<size_t>(c)].begin(), cols[static_cast<size_t>(c)].end());
        a.push_back(std::move(col));
    }
    if (a.empty()) return 0;
    const size_t rows = a[0].size();
    size_t pivot_row = 0;
    int rank = 0;
    for (size_t col = 0; col < a.size() && pivot_row < rows; ++col) {
        size_t sel = rows;
        for (size_t r = pivot_row; r < rows; ++r)
            if (a[col][r] != 0) { sel = r; break; }
        if (sel == rows) continue;
        for (size_t c2 = 0; c2 < a.size(); ++c2) std::swap(a[c2][sel], a[c2][pivot_row]);
        Rat pivot = a[col][pivot_row];
        for (size_t r = pivot_row + 1; r < rows; ++r) {
            Rat factor = a[col][r] / pivot;
            if (factor == 0) continue;
            for (size_t c2 = col; c2 < a.size(); ++c2) a[c2][r] -= factor * a[c2][pivot_row];
        }
        ++pivot_row;
        ++rank;
    }
    return rank;
}

} // namespace

Matroid from_matrix(int rows, int cols, const std::vector<Int>& entries,
                    std::optional<int> prime) {
    if (rows < 1 || cols < 1) throw InputError("from_matrix: need at least one row and column");
    if (cols > kMaxGroundSet) throw InputError("from_matrix: at most 64 columns supported");
    if (static_cast<size_t>(rows) * static_cast<size_t>(cols) != entries.size())
        throw InputError("from_matrix: entry count does not match rows x cols");
    if (prime && !is_prime(*prime))
        throw InputError("from_matrix: modulus " + std::to_string(*prime) + " is not prime");

    std::function<int(Mask)> rank_fn;
    if (prime) {
        const int p = *prime;
        std::vector<std::vector<int>> by_col(static_cast<size_t>(cols),
                                             std::vector<int>(static_cast<size_t>(rows)));
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) {
                Int v = entries[static_cast<size_t>(r) * static_cast<size_t>(cols) + static_cast<size_t>(c)] % p;
                if (v < 0) v += p;
                by_col[static_cast<size_t>(c)][static_cast<size_t>(r)] = static_cast<int>(v);
            }
        rank_fn = [by_col, p](Mask s) { return matrix_rank_mod_p(by_col, p, s); };
    } else {
        std::vector<std::vector<Int>> by_col(static_cast<size_t>(cols),
                                             std::vector<Int>(static_cast<size_t>(rows)));
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                by_col[static_cast<size_t>(c)][static_cast<size_t>(r)] =
                    entries[static_cast<size_t>(r) * static_cast<size_t>(cols) + static_cast<size_t>(c)];
        rank_fn = [by_col](Mask s) { return matrix_rank_rational(by_col, s); };
    }
    return from_flats(cols, detail::flats_from_rank_fn(cols, rank_fn));
}

namespace {

Matroid relabelled_minor(const Matroid& m, Mask universe, const std::vector<Mask>& raw_flats) {
    std::vector<Mask> flats;
    flats.reserve(raw_flats.size());
    for (Mask f : raw_flats) flats.push_back(compress_mask(f, universe));
    std::optional<std::vector<std::string>> labels;
    if (m.labels()) {
        labels.emplace();
        for (int e : elements_of(universe)) labels->push_back((*m.labels())[static_cast<size_t>(e)]);
    }
    return from_flats(popcount(universe), std::move(flats), std::move(labels));
}

} // namespace

Matroid restrict_to(const Matroid& m, Mask s) {
    if (!subset_of(s, m.ground_mask()))
        throw InputError("restrict_to: argument is not a subset of the ground set");
    if (s == 0) throw InputError("restrict_to: restriction to the empty set");
    std::vector<Mask> flats;
    flats.reserve(static_cast<size_t>(m.num_flats()));
    for (int i = 0; i < m.num_flats(); ++i) flats.push_back(m.flat(i) & s);
    return relabelled_minor(m, s, flats);
}

Matroid contract(const Matroid& m, Mask f) {
    if (!m.is_flat(f))
        throw InputError("contract: " + format_set(f) +
                         " is not a flat (contraction by arbitrary sets is out of scope)");
    return detail::contract_subset(m, f);
}

Matroid interval_minor(const Matroid& m, Mask f, Mask g) {
    if (!m.is_flat(f) || !m.is_flat(g))
        throw InputError("interval_minor: both endpoints must be flats");
    if (!subset_of(f, g)) throw InputError("interval_minor: endpoints must be nested");
    if (f == g) throw InputError("interval_minor: empty ground set (equal endpoints)");
    std::vector<Mask> flats;
    for (int i = 0; i < m.num_flats(); ++i) {
        Mask h = m.flat(i);
        if (subset_of(f, h) && subset_of(h, g)) flats.push_back(h & ~f);
    }
    return relabelled_minor(m, g & ~f, flats);
}

Matroid simplify(const Matroid& m) {
    Mask live = m.ground_mask() & ~m.loops();
    if (live == 0) throw InputError("simplify: matroid has rank zero");
    // Dropping loops first keeps the lattice intact: every flat contains all
    // of them, so F -> F & live is a bijection on flats.
    const Matroid base = m.loopless() ? m : restrict_to(m, live);
    Mask reps = 0;
    for (int i = 0; i < base.num_flats(); ++i)
        if (base.flat_rank(i) == 1) reps |= Mask{1} << elements_of(base.flat(i)).front();
    if (reps == 0) throw InputError("simplify: matroid has rank zero");
    Matroid out = restrict_to(base, reps);
    if (out.num_flats() != base.num_flats())
        throw std::logic_error("simplify: lattice changed size; this is a bug");
    return out;
}

Int mobius(const Matroid& m, Mask f, Mask g) {
    if (!m.is_flat(f) || !m.is_flat(g))
        throw InputError("mobius: both endpoints must be flats");
    if (!subset_of(f, g)) throw InputError("mobius: endpoints must be nested");
    // Interval flats arrive in rank-ascending canonical order, so each value
    // only needs previously computed ones.
    std::unordered_map<Mask, Int> mu;
    for (int i = 0; i < m.num_flats(); ++i) {
        Mask h = m.flat(i);
        if (!subset_of(f, h) || !subset_of(h, g)) continue;
        Int v = (h == f) ? Int(1) : Int(0);
        if (h != f)
            for (auto& [k, mv] : mu)
                if (subset_of(k, h)) v -= mv;
        mu[h] = v;
    }
    return mu[g];
}

void require_loopless(const Matroid& m, const char* who) {
    if (!m.loopless())
        throw InputError(std::string(who) + ": matroid has loops (" +
                         format_set(m.loops()) + ")");
}

namespace detail {

Matroid contract_subset(const Matroid& m, Mask s) {
    if (!subset_of(s, m.ground_mask()))
        throw InputError("contract: argument is not a subset of the ground set");
    Mask rest = m.ground_mask() & ~s;
    if (rest == 0) throw InputError("contract: contraction would empty the ground set");
    std::vector<Mask> flats;
    for (int i = 0; i < m.num_flats(); ++i)
        if (subset_of(s, m.flat(i))) flats.push_back(m.flat(i) & ~s);
    return relabelled_minor(m, rest, flats);
}

} // namespace detail

} // namespace chow
