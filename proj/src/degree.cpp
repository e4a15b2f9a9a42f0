#include "chow/degree.hpp"

#include <algorithm>

namespace chow {

const std::vector<Int>& interval_mu_vector(const Matroid& m, Mask f, Mask g,
                                           DegreeCache& cache) {
    auto key = std::make_pair(f, g);
    auto it = cache.interval_mu.find(key);
    if (it != cache.interval_mu.end()) return it->second;
    return cache.interval_mu.emplace(key, mu_vector(interval_minor(m, f, g))).first->second;
}

Int deg_psi_powers(const Matroid& m, int a, int b) {
    require_loopless(m, "deg_psi_powers");
    if (a < 0 || b < 0) throw InputError("deg_psi_powers: exponents must be nonnegative");
    if (a + b != m.top_degree()) return 0;
    return mu(m, a);
}

namespace {

struct MonomialView {
    std::vector<int> flat_index; // interior flats, sorted along the flag
    std::vector<Mask> flat_mask;
    std::vector<int> exp;
    int top_exp = 0; // exponent of D_E
    bool chain = true;
};

MonomialView split_monomial(const Matroid& m, const DivisorMonomial& mono, const char* who) {
    MonomialView v;
    for (auto& [idx, d] : mono.exps) {
        if (idx < 0 || idx >= m.num_flats())
            throw InputError(std::string(who) + ": factor index out of range");
        if (d < 1) throw InputError(std::string(who) + ": exponents must be positive");
        Mask f = m.flat(idx);
        if (f == 0)
            throw InputError(std::string(who) + ": the empty flat is not a divisor class");
        if (f == m.ground_mask()) {
            v.top_exp = d;
        } else {
            v.flat_index.push_back(idx);
            v.flat_mask.push_back(f);
            v.exp.push_back(d);
        }
    }
    // Sort interior flats by rank then mask; distinct flats form a flag
    // exactly when consecutive ones are nested.
    std::vector<size_t> order(v.flat_index.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        int ra = m.flat_rank(v.flat_index[a]), rb = m.flat_rank(v.flat_index[b]);
        return ra != rb ? ra < rb : v.flat_mask[a] < v.flat_mask[b];
    });
    MonomialView sorted;
    sorted.top_exp = v.top_exp;
    for (size_t i : order) {
        sorted.flat_index.push_back(v.flat_index[i]);
        sorted.flat_mask.push_back(v.flat_mask[i]);
        sorted.exp.push_back(v.exp[i]);
    }
    for (size_t i = 0; i + 1 < sorted.flat_mask.size(); ++i)
        if (!subset_of(sorted.flat_mask[i], sorted.flat_mask[i + 1])) sorted.chain = false;
    return sorted;
}

} // namespace

Int deg_flag_mixed(const Matroid& m, const FlagPsiTerm& term, DegreeCache* cache) {
    require_loopless(m, "deg_flag_mixed");
    const size_t k = term.flag.size();
    if (term.plus_exp.size() != k + 1 || term.minus_exp.size() != k + 1)
        throw InputError("deg_flag_mixed: exponent vectors must have k+1 entries");
    for (int a : term.plus_exp)
        if (a < 0) throw InputError("deg_flag_mixed: negative exponent");
    for (int b : term.minus_exp)
        if (b < 0) throw InputError("deg_flag_mixed: negative exponent");

    std::vector<Mask> chain;
    chain.push_back(0);
    for (int idx : term.flag) {
        if (idx < 0 || idx >= m.num_flats())
            throw InputError("deg_flag_mixed: flag index out of range");
        Mask f = m.flat(idx);
        if (f == 0 || f == m.ground_mask())
            throw InputError("deg_flag_mixed: flag must consist of proper flats");
        chain.push_back(f);
    }
    chain.push_back(m.ground_mask());
    for (size_t i = 0; i + 1 < chain.size(); ++i)
        if (chain[i] == chain[i + 1] || !subset_of(chain[i], chain[i + 1]))
            throw InputError("deg_flag_mixed: flag is not strictly nested");

    DegreeCache local;
    DegreeCache& c = cache ? *cache : local;
    Int product = term.coefficient;
    for (size_t i = 0; i + 1 < chain.size(); ++i) {
        int gap = m.rank_of(chain[i + 1]) - m.rank_of(chain[i]);
        if (term.plus_exp[i] + term.minus_exp[i] != gap - 1) return 0;
        product *= interval_mu_vector(m, chain[i], chain[i + 1], c)[static_cast<size_t>(term.plus_exp[i])];
    }
    return product;
}

PsiExpansion expand_monomial(const Matroid& m, const DivisorMonomial& mono) {
    require_loopless(m, "expand_monomial");
    MonomialView v = split_monomial(m, mono, "expand_monomial");
    PsiExpansion out;
    if (!v.chain) return out;

    const size_t k = v.flat_index.size();
    int sign_exp = v.top_exp;
    for (int d : v.exp) sign_exp += d - 1;
    const int sign = sign_exp % 2 ? -1 : 1;

    // Odometer over one plus-exponent choice a_i in [0, d_i - 1] per flat.
    std::vector<int> a(k, 0);
    while (true) {
        FlagPsiTerm term;
        term.flag = v.flat_index;
        term.plus_exp.assign(k + 1, 0);
        term.minus_exp.assign(k + 1, 0);
        Int coeff = sign;
        for (size_t i = 0; i < k; ++i) {
            term.plus_exp[i + 1] = a[i];
            term.minus_exp[i] = v.exp[i] - 1 - a[i];
            coeff *= binomial(v.exp[i] - 1, a[i]);
        }
        term.minus_exp[k] = v.top_exp;
        term.coefficient = coeff;
        out.terms.push_back(std::move(term));

        size_t pos = 0;
        while (pos < k && a[pos] == v.exp[pos] - 1) a[pos++] = 0;
        if (pos == k) break;
        ++a[pos];
    }
    return out;
}

Int deg_monomial(const Matroid& m, const DivisorMonomial& mono, Diagnostics* diag,
                 DegreeCache* cache) {
    require_loopless(m, "deg_monomial");
    MonomialView v = split_monomial(m, mono, "deg_monomial");
    const int r = m.top_degree();
    const int total = mono.degree();
    if (total != r) {
        warn_into(diag, "deg_monomial: total degree " + std::to_string(total) +
                            " is not the top degree " + std::to_string(r) +
                            "; the degree map vanishes there");
        return 0;
    }
    if (!v.chain) return 0;

    const size_t k = v.flat_index.size();
    // a_j = r - rk(F_j) - d_E - sum_{i>j} d_i, the unique plus-exponent that
    // puts every interval at its top degree. Outside [0, d_j - 1] the
    // monomial pairs to zero.
    std::vector<int> a(k, 0);
    int suffix = v.top_exp;
    for (size_t j = k; j-- > 0;) {
        a[j] = r - m.flat_rank(v.flat_index[j]) - suffix;
        if (a[j] < 0 || a[j] > v.exp[j] - 1) return 0;
        suffix += v.exp[j];
    }

    DegreeCache local;
    DegreeCache& c = cache ? *cache : local;
    Int product = (r - static_cast<int>(k)) % 2 ? -1 : 1;
    for (size_t j = 0; j < k; ++j) {
        Mask upper = (j + 1 < k) ? v.flat_mask[j + 1] : m.ground_mask();
        product *= binomial(v.exp[j] - 1, a[j]);
        product *= interval_mu_vector(m, v.flat_mask[j], upper, c)[static_cast<size_t>(a[j])];
        if (product == 0) return 0;
    }
    return product;
}

Int deg_psi_minus_product(const Matroid& m, const std::vector<Mask>& flats) {
    require_loopless(m, "deg_psi_minus_product");
    const int r = m.top_degree();
    if (static_cast<int>(flats.size()) != r)
        throw InputError("deg_psi_minus_product: expected exactly " + std::to_string(r) +
                         " flats, got " + std::to_string(flats.size()));
    for (Mask f : flats) {
        if (!m.is_flat(f))
            throw InputError("deg_psi_minus_product: " + format_set(f) + " is not a flat");
        if (f == 0)
            throw InputError("deg_psi_minus_product: flats must be nonempty");
    }
    if (r > 24) throw GuardError("deg_psi_minus_product: 2^r subcollections is over the guard");

    // Union of every subcollection via subset DP, then the rank test.
    const size_t count = size_t{1} << r;
    std::vector<Mask> uni(count, 0);
    for (size_t s = 1; s < count; ++s) {
        int low = std::countr_zero(s);
        uni[s] = uni[s & (s - 1)] | flats[static_cast<size_t>(low)];
        if (m.rank_of(uni[s]) <= popcount(static_cast<Mask>(s))) return 0;
    }
    return 1;
}

} // namespace chow
