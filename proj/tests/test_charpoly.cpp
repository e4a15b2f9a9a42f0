#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chow/charpoly.hpp"
#include "chow/errors.hpp"
#include "chow/matroid.hpp"

using namespace chow;

namespace {

Matroid k4() {
    return from_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

Matroid fano() {
    std::vector<Int> entries = {1, 0, 0, 1, 1, 0, 1,
                                0, 1, 0, 1, 0, 1, 1,
                                0, 0, 1, 0, 1, 1, 1};
    return from_matrix(3, 7, entries, 2);
}

CharPoly poly(std::vector<Int> ascending) {
    CharPoly p;
    p.coeffs = std::move(ascending);
    p.trim();
    return p;
}

} // namespace

TEST_CASE("boolean characteristic polynomial is (λ-1)^n") {
    CHECK(char_poly(from_boolean(2)) == poly({1, -2, 1}));
    CHECK(char_poly(from_boolean(5)) == poly({-1, 5, -10, 10, -5, 1}));
    CHECK(mu_vector(from_boolean(5)) == std::vector<Int>{1, 4, 6, 4, 1});
}

TEST_CASE("known polynomials") {
    CHECK(char_poly(from_uniform(2, 3)) == poly({2, -3, 1}));
    CHECK(mu_vector(from_uniform(2, 3)) == std::vector<Int>{1, 2});

    CHECK(char_poly(k4()) == poly({-6, 11, -6, 1}));
    CHECK(reduced_char_poly(k4()) == poly({6, -5, 1}));
    CHECK(mu_vector(k4()) == std::vector<Int>{1, 5, 6});

    CHECK(char_poly(fano()) == poly({-8, 14, -7, 1}));
    CHECK(mu_vector(fano()) == std::vector<Int>{1, 6, 8});

    CHECK(char_poly(from_uniform(3, 4)) == poly({-3, 6, -4, 1}));
    CHECK(mu_vector(from_uniform(3, 4)) == std::vector<Int>{1, 3, 3});
}

TEST_CASE("three implementations agree across the catalog") {
    std::vector<Matroid> catalog;
    for (int n = 1; n <= 5; ++n) catalog.push_back(from_boolean(n));
    catalog.push_back(from_uniform(2, 4));
    catalog.push_back(from_uniform(3, 5));
    catalog.push_back(from_uniform(2, 5));
    catalog.push_back(k4());
    catalog.push_back(fano());
    for (const Matroid& m : catalog) {
        CharPoly reference = char_poly(m);
        CHECK(char_poly_deletion_contraction(m) == reference);
        CHECK(char_poly_mobius(m) == reference);
    }
}

TEST_CASE("loops kill the polynomial") {
    Matroid loopy = from_graph(2, {{0, 0}, {0, 1}});
    CHECK(char_poly(loopy).is_zero());
    CHECK(char_poly_deletion_contraction(loopy).is_zero());
    CHECK(char_poly_mobius(loopy).is_zero());
    CHECK_THROWS_AS(reduced_char_poly(loopy), InputError);
    CHECK_THROWS_AS(mu(loopy, 0), InputError);
}

TEST_CASE("reduced polynomial divides exactly") {
    Matroid u35 = from_uniform(3, 5);
    CharPoly chi = char_poly(u35);
    CharPoly reduced = reduced_char_poly(u35);
    // multiply back by (λ - 1)
    CharPoly back;
    back.coeffs.assign(reduced.coeffs.size() + 1, 0);
    for (size_t i = 0; i < reduced.coeffs.size(); ++i) {
        back.coeffs[i + 1] += reduced.coeffs[i];
        back.coeffs[i] -= reduced.coeffs[i];
    }
    back.trim();
    CHECK(back == chi);
    CHECK(chi.eval(1) == 0);
}

TEST_CASE("mu accessors") {
    Matroid b7 = from_boolean(7);
    CHECK(mu(b7, 2) == 15); // C(6,2)
    CHECK(mu(b7, 0) == 1);
    CHECK(mu(b7, 6) == 1);
    CHECK_THROWS_AS(mu(b7, 7), InputError);
    CHECK_THROWS_AS(mu(b7, -1), InputError);

    // μ^a values are the unsigned reduced coefficients
    Matroid u23 = from_uniform(2, 3);
    CHECK(mu(u23, 0) == 1);
    CHECK(mu(u23, 1) == 2);
}

TEST_CASE("simplification preserves the characteristic polynomial") {
    Matroid doubled_triangle =
        from_graph(3, {{0, 1}, {0, 1}, {1, 2}, {0, 2}});
    Matroid simple = simplify(doubled_triangle);
    CHECK(simple == from_uniform(2, 3));
    // the polynomial only sees the lattice, which simplification preserves;
    // this holds for the Whitney sum too, which sees the whole ground set
    CHECK(char_poly(doubled_triangle) == char_poly(simple));
    CHECK(char_poly_mobius(doubled_triangle) == char_poly_mobius(simple));
    CHECK(doubled_triangle.num_flats() == simple.num_flats());
}

TEST_CASE("whitney guard") {
    // can't build a 21-element matroid cheaply here, but the uniform path
    // accepts up to the bitset cap; the guard lives in char_poly itself
    Matroid u = from_uniform(1, 22);
    CHECK_THROWS_AS(char_poly(u), GuardError);
    CHECK(!char_poly_deletion_contraction(u).is_zero());
}

TEST_CASE("polynomial text form") {
    CHECK(char_poly(from_uniform(2, 3)).to_string("x") == "x^2 - 3x + 2");
    CHECK(CharPoly{}.to_string() == "0");
}
