#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "chow/degree.hpp"
#include "chow/subset.hpp"

#include <vector>

using namespace chow;

namespace {

DivisorMonomial mono(const Matroid& m, std::initializer_list<std::pair<Mask, int>> factors) {
    DivisorMonomial out;
    for (auto& [mask, d] : factors) {
        int idx = m.index_of(mask);
        REQUIRE(idx >= 0);
        out.exps[idx] += d;
    }
    return out;
}

// All monomials of the given total degree over proper flats and E, as
// exponent multisets (combinations with repetition).
std::vector<DivisorMonomial> monomials_of_degree(const Matroid& m, int degree) {
    std::vector<int> classes = m.proper_flats();
    classes.push_back(m.num_flats() - 1);
    std::vector<DivisorMonomial> out;
    std::vector<int> picks;
    auto rec = [&](auto&& self, size_t from, int left) -> void {
        if (left == 0) {
            DivisorMonomial mo;
            for (int idx : picks) mo.exps[idx] += 1;
            out.push_back(std::move(mo));
            return;
        }
        for (size_t i = from; i < classes.size(); ++i) {
            picks.push_back(classes[i]);
            self(self, i, left - 1);
            picks.pop_back();
        }
    };
    rec(rec, 0, degree);
    return out;
}

Int expansion_degree(const Matroid& m, const DivisorMonomial& mo, DegreeCache& cache) {
    Int total = 0;
    for (const FlagPsiTerm& term : expand_monomial(m, mo).terms)
        total += deg_flag_mixed(m, term, &cache);
    return total;
}

} // namespace

TEST_CASE("the rank-7 boolean worked example") {
    const Matroid b7 = from_boolean(7);
    auto mo = mono(b7, {{0b0000011, 3}, {0b0011111, 2}, {0b0111111, 1}});
    CHECK(deg_monomial(b7, mo) == -4);

    DegreeCache cache;
    CHECK(expansion_degree(b7, mo, cache) == -4);
}

TEST_CASE("psi power degrees are Moebius numbers") {
    const Matroid b7 = from_boolean(7);
    CHECK(deg_psi_powers(b7, 2, 4) == 15);
    CHECK(deg_psi_powers(b7, 0, 6) == 1);
    CHECK(deg_psi_powers(b7, 6, 0) == 1);
    CHECK(deg_psi_powers(b7, 2, 3) == 0); // off the top degree
    CHECK_THROWS_AS(deg_psi_powers(b7, -1, 7), InputError);

    // chi(U_{3,4}) = λ^3 - 4λ^2 + 6λ - 3, reduced λ^2 - 3λ + 3
    const Matroid u34 = from_uniform(3, 4);
    CHECK(deg_psi_powers(u34, 0, 2) == 1);
    CHECK(deg_psi_powers(u34, 1, 1) == 3);
    CHECK(deg_psi_powers(u34, 2, 0) == 3);
}

TEST_CASE("complete flags have degree one and powers of the top class alternate") {
    const Matroid b4 = from_boolean(4);
    CHECK(deg_monomial(b4, mono(b4, {{0b0001, 1}, {0b0011, 1}, {0b0111, 1}})) == 1);

    const Matroid u34 = from_uniform(3, 4);
    CHECK(deg_monomial(u34, mono(u34, {{0b0010, 1}, {0b0110, 1}})) == 1);

    const Matroid b3 = from_boolean(3);
    CHECK(deg_monomial(b3, mono(b3, {{b3.ground_mask(), 2}})) == 1);
    CHECK(deg_monomial(b4, mono(b4, {{b4.ground_mask(), 3}})) == -1);
    const Matroid u24 = from_uniform(2, 4);
    CHECK(deg_monomial(u24, mono(u24, {{u24.ground_mask(), 1}})) == -1);
}

TEST_CASE("hand-computed degrees") {
    const Matroid u34 = from_uniform(3, 4);
    CHECK(deg_monomial(u34, mono(u34, {{0b0001, 2}})) == -2);
    CHECK(deg_monomial(u34, mono(u34, {{0b0011, 2}})) == -1);
    CHECK(deg_monomial(u34, mono(u34, {{0b0001, 1}, {u34.ground_mask(), 1}})) == -1);

    const Matroid b4 = from_boolean(4);
    CHECK(deg_monomial(b4, mono(b4, {{0b0001, 1}, {0b0011, 2}})) == -1);
    CHECK(deg_monomial(b4, mono(b4, {{0b0001, 2}, {b4.ground_mask(), 1}})) == 2);
}

TEST_CASE("incomparable factors vanish") {
    const Matroid b3 = from_boolean(3);
    CHECK(deg_monomial(b3, mono(b3, {{0b001, 1}, {0b010, 1}})) == 0);
    CHECK(expand_monomial(b3, mono(b3, {{0b001, 1}, {0b010, 1}})).terms.empty());

    const Matroid b4 = from_boolean(4);
    CHECK(deg_monomial(b4, mono(b4, {{0b0011, 1}, {0b1100, 1}, {b4.ground_mask(), 1}})) == 0);
}

TEST_CASE("off the top degree the map vanishes with a warning") {
    const Matroid b3 = from_boolean(3);
    Diagnostics diag;
    CHECK(deg_monomial(b3, mono(b3, {{0b001, 1}}), &diag) == 0);
    REQUIRE(diag.warnings.size() == 1);
    CHECK(diag.warnings[0].find("top degree") != std::string::npos);

    diag.warnings.clear();
    CHECK(deg_monomial(b3, mono(b3, {{0b001, 3}}), &diag) == 0);
    CHECK(diag.warnings.size() == 1);
}

TEST_CASE("degree input validation") {
    const Matroid b3 = from_boolean(3);

    DivisorMonomial empty_flat;
    empty_flat.exps[0] = 2; // canonical index 0 is the empty flat
    CHECK_THROWS_AS(deg_monomial(b3, empty_flat), InputError);

    DivisorMonomial out_of_range;
    out_of_range.exps[b3.num_flats()] = 2;
    CHECK_THROWS_AS(deg_monomial(b3, out_of_range), InputError);

    DivisorMonomial nonpositive;
    nonpositive.exps[b3.index_of(0b001)] = 0;
    nonpositive.exps[b3.index_of(0b011)] = 2;
    CHECK_THROWS_AS(deg_monomial(b3, nonpositive), InputError);

    const Matroid loopy = from_flats(2, std::vector<Mask>{0b01, 0b11});
    DivisorMonomial any;
    any.exps[1] = 1;
    CHECK_THROWS_AS(deg_monomial(loopy, any), InputError);
}

TEST_CASE("psi expansion shape for a squared pair flat") {
    const Matroid b3 = from_boolean(3);
    auto expansion = expand_monomial(b3, mono(b3, {{0b011, 2}}));
    REQUIRE(expansion.terms.size() == 2);
    for (const FlagPsiTerm& t : expansion.terms) {
        CHECK(t.coefficient == -1);
        REQUIRE(t.flag.size() == 1);
        CHECK(b3.flat(t.flag[0]) == 0b011);
        CHECK(t.plus_exp.size() == 2);
        CHECK(t.minus_exp.size() == 2);
        CHECK(t.plus_exp[1] + t.minus_exp[0] == 1);
    }
    DegreeCache cache;
    CHECK(expansion_degree(b3, mono(b3, {{0b011, 2}}), cache) == -1);
}

TEST_CASE("expansion agrees with the closed form on every top-degree monomial") {
    auto check_matroid = [](const Matroid& m) {
        DegreeCache cache;
        for (const DivisorMonomial& mo : monomials_of_degree(m, m.top_degree())) {
            Int closed = deg_monomial(m, mo, nullptr, &cache);
            Int expanded = expansion_degree(m, mo, cache);
            CHECK(closed == expanded);
        }
    };
    check_matroid(from_boolean(3));
    check_matroid(from_boolean(4));
    check_matroid(from_uniform(2, 4));
    check_matroid(from_uniform(3, 4));
    check_matroid(from_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
}

TEST_CASE("psi-minus products follow the subcollection rank test") {
    const Matroid b3 = from_boolean(3);
    const Mask e3 = b3.ground_mask();
    CHECK(deg_psi_minus_product(b3, {e3, e3}) == 1);

    const Matroid u34 = from_uniform(3, 4);
    const Mask e4 = u34.ground_mask();
    CHECK(deg_psi_minus_product(u34, {e4, e4}) == 1);
    CHECK(deg_psi_minus_product(u34, {0b0010, 0b0010}) == 0);
    // A rank-1 flat alone already fails the test, whatever its partner.
    CHECK(deg_psi_minus_product(u34, {0b0010, e4}) == 0);
    CHECK(deg_psi_minus_product(u34, {0b0011, 0b1100}) == 1);
    CHECK(deg_psi_minus_product(u34, {0b0011, 0b0011}) == 0);
    CHECK(deg_psi_minus_product(u34, {0b0011, e4}) == 1);

    CHECK_THROWS_AS(deg_psi_minus_product(u34, {e4}), InputError);
    CHECK_THROWS_AS(deg_psi_minus_product(u34, {e4, e4, e4}), InputError);
    CHECK_THROWS_AS(deg_psi_minus_product(u34, {Mask{0}, e4}), InputError);
    CHECK_THROWS_AS(deg_psi_minus_product(u34, {0b0111, e4}), InputError); // not a flat
}

TEST_CASE("psi power degrees satisfy deletion-contraction") {
    // For e neither a loop nor a coloop and a >= 1:
    //   deg over M\e of psi_0^a psi_inf^(r-a)
    //     = deg over M of psi_0^a psi_inf^(r-a) - deg over M/e of psi_0^(a-1) psi_inf^(r-a).
    auto check_matroid = [](const Matroid& m, int e) {
        Mask single = Mask{1} << e;
        REQUIRE(!contains(m.loops(), e));
        REQUIRE(!contains(m.coloops(), e));
        REQUIRE(m.is_flat(single));
        const Matroid del = restrict_to(m, m.ground_mask() & ~single);
        const Matroid con = contract(m, single);
        const int r = m.top_degree();
        REQUIRE(del.top_degree() == r);
        REQUIRE(con.top_degree() == r - 1);
        for (int a = 1; a <= r; ++a) {
            CAPTURE(a);
            CHECK(deg_psi_powers(del, a, r - a) ==
                  deg_psi_powers(m, a, r - a) - deg_psi_powers(con, a - 1, r - a));
        }
    };
    check_matroid(from_uniform(2, 4), 0);
    check_matroid(from_uniform(3, 5), 2);
    check_matroid(from_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}), 5);
}

TEST_CASE("a shared cache changes nothing") {
    const Matroid b4 = from_boolean(4);
    DegreeCache cache;
    auto mo = mono(b4, {{0b0001, 2}, {0b0111, 1}});
    Int first = deg_monomial(b4, mo, nullptr, &cache);
    Int second = deg_monomial(b4, mo, nullptr, &cache);
    CHECK(first == second);
    CHECK(first == deg_monomial(b4, mo));
}
