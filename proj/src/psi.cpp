#include "chow/divisor.hpp"

namespace chow {

namespace {

void check_element(const Matroid& m, int e, const char* who) {
    if (e < 0 || e >= m.ground_size())
        throw InputError(std::string(who) + ": element " + std::to_string(e) +
                         " outside the ground set");
}

void check_flat(const Matroid& m, Mask f, const char* who) {
    if (!m.is_flat(f))
        throw InputError(std::string(who) + ": " + format_set(f) + " is not a flat");
}

} // namespace

DivisorCombination psi_minus(const Matroid& m, Mask f, int e) {
    require_loopless(m, "psi_minus");
    check_flat(m, f, "psi_minus");
    check_element(m, e, "psi_minus");
    DivisorCombination out;
    for (int i : m.proper_flats()) {
        Mask g = m.flat(i);
        if (contains(g, e)) out.add(i, 1);
        if (subset_of(f, g)) out.add(i, -1);
    }
    return out;
}

DivisorCombination psi_plus(const Matroid& m, Mask f, int e) {
    require_loopless(m, "psi_plus");
    check_flat(m, f, "psi_plus");
    check_element(m, e, "psi_plus");
    DivisorCombination out;
    for (int i : m.proper_flats()) {
        Mask g = m.flat(i);
        if (!contains(g, e)) out.add(i, 1);
        if (subset_of(g, f)) out.add(i, -1);
    }
    return out;
}

DivisorCombination psi_zero(const Matroid& m) { return psi_plus(m, 0, 0); }

DivisorCombination psi_infinity(const Matroid& m) {
    return psi_minus(m, m.ground_mask(), 0);
}

DivisorCombination rho(const Matroid& m, Mask s, const DivisorCombination& over_restriction) {
    require_loopless(m, "rho");
    if (s == 0) throw InputError("rho: S must be nonempty");
    if (!subset_of(s, m.ground_mask()))
        throw InputError("rho: S is not a subset of the ground set");

    const Matroid r = restrict_to(m, s);
    const Mask complement = m.ground_mask() & ~s;
    DivisorCombination out;
    for (auto& [idx, coeff] : over_restriction.coeffs) {
        if (idx < 0 || idx >= r.num_flats())
            throw InputError("rho: coefficient on a nonexistent flat of the restriction");
        Mask g_local = r.flat(idx);
        if (g_local == 0 || g_local == r.ground_mask())
            throw InputError("rho: input must be supported on proper flats of the restriction");
        Mask g = expand_mask(g_local, s);
        for (int i : m.proper_flats()) {
            Mask gp = m.flat(i);
            if (subset_of(g, gp) && subset_of(gp, g | complement)) out.add(i, coeff);
        }
    }
    return out;
}

} // namespace chow
