#include "chow/charpoly.hpp"

#include <map>

namespace chow {

Int CharPoly::eval(const Int& x) const {
    Int acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

void CharPoly::trim() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

std::string CharPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        Int c = coeff(i);
        if (c == 0) continue;
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        Int a = abs(c);
        if (a != 1 || i == 0) out += a.str();
        if (i >= 1) out += var;
        if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
}

CharPoly char_poly(const Matroid& m) {
    const int n = m.ground_size();
    if (n > 20)
        throw GuardError("char_poly: Whitney sum over 2^" + std::to_string(n) +
                         " subsets is over the guard");
    const int top = m.rank();
    CharPoly p;
    p.coeffs.assign(static_cast<size_t>(top) + 1, 0);
    for (Mask s = 0;; ++s) {
        int sign = popcount(s) % 2 ? -1 : 1;
        p.coeffs[static_cast<size_t>(top - m.rank_of(s))] += sign;
        if (s == full_mask(n)) break;
    }
    p.trim();
    return p;
}

namespace {

CharPoly times_lambda_minus_one(const CharPoly& p) {
    if (p.is_zero()) return p;
    CharPoly q;
    q.coeffs.assign(p.coeffs.size() + 1, 0);
    for (size_t i = 0; i < p.coeffs.size(); ++i) {
        q.coeffs[i + 1] += p.coeffs[i];
        q.coeffs[i] -= p.coeffs[i];
    }
    q.trim();
    return q;
}

CharPoly minus(const CharPoly& a, const CharPoly& b) {
    CharPoly q;
    size_t len = std::max(a.coeffs.size(), b.coeffs.size());
    q.coeffs.assign(len, 0);
    for (size_t i = 0; i < len; ++i) q.coeffs[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
    q.trim();
    return q;
}

using Signature = std::vector<Mask>;

Signature signature_of(const Matroid& m) {
    Signature sig;
    sig.reserve(static_cast<size_t>(m.num_flats()) + 1);
    sig.push_back(static_cast<Mask>(m.ground_size()));
    for (int i = 0; i < m.num_flats(); ++i) sig.push_back(m.flat(i));
    return sig;
}

CharPoly delcon(const Matroid& m, std::map<Signature, CharPoly>& memo) {
    if (!m.loopless()) return {}; // a loop kills the polynomial
    const int n = m.ground_size();
    if (n == 1) {
        CharPoly base;
        base.coeffs = {Int(-1), Int(1)}; // λ - 1
        return base;
    }
    Signature sig = signature_of(m);
    if (auto it = memo.find(sig); it != memo.end()) return it->second;

    const int e = n - 1;
    const Mask e_bit = Mask{1} << e;
    Matroid deletion = restrict_to(m, m.ground_mask() & ~e_bit);
    CharPoly result;
    if (m.is_flat(m.ground_mask() & ~e_bit)) {
        // e is a coloop: χ_M = (λ - 1) χ_{M\e}
        result = times_lambda_minus_one(delcon(deletion, memo));
    } else {
        result = minus(delcon(deletion, memo), delcon(detail::contract_subset(m, e_bit), memo));
    }
    memo.emplace(std::move(sig), result);
    return result;
}

} // namespace

CharPoly char_poly_deletion_contraction(const Matroid& m) {
    std::map<Signature, CharPoly> memo;
    return delcon(m, memo);
}

CharPoly char_poly_mobius(const Matroid& m) {
    if (!m.loopless()) return {};
    const int top = m.rank();
    // μ(∅, F) over the lattice; canonical order is rank-ascending so every
    // value is ready before it is needed.
    std::vector<Int> mu_from_bottom(static_cast<size_t>(m.num_flats()), 0);
    CharPoly p;
    p.coeffs.assign(static_cast<size_t>(top) + 1, 0);
    for (int i = 0; i < m.num_flats(); ++i) {
        Int v = (i == 0) ? Int(1) : Int(0);
        for (int j = 0; j < i; ++j)
            if (subset_of(m.flat(j), m.flat(i)) && m.flat(j) != m.flat(i))
                v -= mu_from_bottom[static_cast<size_t>(j)];
        mu_from_bottom[static_cast<size_t>(i)] = v;
        p.coeffs[static_cast<size_t>(top - m.flat_rank(i))] += v;
    }
    p.trim();
    return p;
}

CharPoly reduced_char_poly(const Matroid& m) {
    require_loopless(m, "reduced_char_poly");
    CharPoly chi = char_poly(m);
    // Synthetic division by (λ - 1); the remainder is χ(1), which must vanish.
    CharPoly q;
    q.coeffs.assign(chi.coeffs.size() - 1, 0);
    Int carry = 0;
    for (int i = chi.degree(); i >= 1; --i) {
        carry += chi.coeff(i);
        q.coeffs[static_cast<size_t>(i - 1)] = carry;
    }
    if (carry + chi.coeff(0) != 0)
        throw std::logic_error("reduced_char_poly: (λ-1) does not divide χ");
    q.trim();
    return q;
}

Int mu(const Matroid& m, int a) {
    const int r = m.top_degree();
    if (a < 0 || a > r)
        throw InputError("mu: index " + std::to_string(a) + " outside [0, " +
                         std::to_string(r) + "]");
    CharPoly reduced = reduced_char_poly(m);
    Int v = reduced.coeff(r - a);
    return a % 2 ? -v : v;
}

std::vector<Int> mu_vector(const Matroid& m) {
    const int r = m.top_degree();
    CharPoly reduced = reduced_char_poly(m);
    std::vector<Int> out;
    out.reserve(static_cast<size_t>(r) + 1);
    for (int a = 0; a <= r; ++a) {
        Int v = reduced.coeff(r - a);
        out.push_back(a % 2 ? -v : v);
    }
    return out;
}

} // namespace chow
