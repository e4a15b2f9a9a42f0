#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "chow/volume.hpp"
#include "chow/subset.hpp"

#include <random>

using namespace chow;

namespace {

Matroid k4() { return from_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

const VolumeTerm* find_term(const VolumePolynomial& vp, const std::vector<Mask>& flag,
                            const std::vector<int>& exps) {
    for (const VolumeTerm& t : vp.terms)
        if (t.flag == flag && t.exps == exps) return &t;
    return nullptr;
}

MinkowskiWeights random_weights(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> nsets(1, 4);
    std::uniform_int_distribution<Mask> set(1, full_mask(n));
    std::uniform_int_distribution<int> value(0, 3);
    MinkowskiWeights y;
    int count = nsets(rng);
    for (int i = 0; i < count; ++i) y[set(rng)] += value(rng);
    return y;
}

} // namespace

TEST_CASE("fixed hypersimplex-style volumes") {
    const Matroid b3 = from_boolean(3);

    SUBCASE("one simplex summand") {
        MinkowskiWeights y{{0b111, 1}};
        SupportVector x = minkowski_to_support(3, y);
        CHECK(x == SupportVector{{0b001, 1}, {0b011, 1}, {0b101, 1}});
        CHECK(eval_volume(b3, x) == Rat(1, 2));
        CHECK(postnikov_volume(3, y) == Rat(1, 2));
    }
    SUBCASE("two edge summands") {
        MinkowskiWeights y{{0b011, 1}, {0b101, 1}};
        SupportVector x = minkowski_to_support(3, y);
        CHECK(x == SupportVector{{0b001, 2}, {0b011, 1}, {0b101, 1}});
        CHECK(eval_volume(b3, x) == 1);
        CHECK(postnikov_volume(3, y) == 1);
    }
    SUBCASE("a point summand contributes nothing") {
        MinkowskiWeights y{{0b010, 1}};
        SupportVector x = minkowski_to_support(3, y);
        CHECK(x == SupportVector{{0b001, 1}, {0b101, 1}, {0b010, -1}, {0b110, -1}});
        CHECK(eval_volume(b3, x) == 0);
        CHECK(postnikov_volume(3, y) == 0);
    }
    SUBCASE("zero support") {
        CHECK(eval_volume(b3, {}) == 0);
        CHECK(postnikov_volume(3, {}) == 0);
    }
}

TEST_CASE("submodularity checks") {
    SUBCASE("all-ones on proper subsets is submodular") {
        SupportVector x;
        for (Mask s = 1; s < full_mask(3); ++s) x[s] = 1;
        CHECK(is_submodular(3, x));
    }
    SUBCASE("an isolated bump is not") {
        SupportVector x{{0b011, 1}};
        std::pair<Mask, Mask> w;
        CHECK(!is_submodular(3, x, &w));
        CHECK(w.first == 0b001);
        CHECK(w.second == 0b010);
    }
    SUBCASE("the zero vector is submodular") { CHECK(is_submodular(4, {})); }
    SUBCASE("guards and validation") {
        CHECK_THROWS_AS(is_submodular(13, {}), GuardError);
        CHECK_THROWS_AS(is_submodular(3, SupportVector{{0, 1}}), InputError);
        CHECK_THROWS_AS(is_submodular(3, SupportVector{{0b111, 1}}), InputError);
    }
}

TEST_CASE("the two boolean volume formulas agree on random weights") {
    std::mt19937_64 rng(11);
    for (int n : {3, 4, 5}) {
        const Matroid bn = from_boolean(n);
        for (int trial = 0; trial < 30; ++trial) {
            MinkowskiWeights y = random_weights(rng, n);
            CAPTURE(n);
            CAPTURE(trial);
            CHECK(postnikov_volume(n, y) == eval_volume(bn, minkowski_to_support(n, y)));
        }
    }
}

TEST_CASE("volume is homogeneous of degree n-1") {
    MinkowskiWeights y{{0b0111, 1}, {0b1100, 2}, {0b0011, 1}};
    MinkowskiWeights scaled;
    for (auto& [g, v] : y) scaled[g] = v * 3;
    CHECK(postnikov_volume(4, scaled) == 27 * postnikov_volume(4, y));
}

TEST_CASE("volume is invariant under relabeling the ground set") {
    MinkowskiWeights y{{0b0011, 1}, {0b0110, 2}, {0b1111, 1}};
    auto rotate = [](Mask s, int n) {
        Mask out = 0;
        for (int e : elements_of(s)) out |= Mask{1} << ((e + 1) % n);
        return out;
    };
    MinkowskiWeights rotated;
    for (auto& [g, v] : y) rotated[rotate(g, 4)] = v;
    CHECK(postnikov_volume(4, rotated) == postnikov_volume(4, y));
}

TEST_CASE("symbolic volume polynomial of the rank-3 boolean matroid") {
    const Matroid b3 = from_boolean(3);
    VolumePolynomial vp = volume_polynomial(b3);
    CHECK(vp.ground_size == 3);
    CHECK(vp.top_degree == 2);
    CHECK(vp.boolean_case);
    CHECK(vp.denominator_factorial == 2);
    CHECK(vp.terms.size() == 12);

    const VolumeTerm* sq = find_term(vp, {0b001}, {2});
    REQUIRE(sq != nullptr);
    CHECK(sq->coef == -1);

    const VolumeTerm* flag = find_term(vp, {0b001, 0b011}, {1, 1});
    REQUIRE(flag != nullptr);
    CHECK(flag->coef == 2);

    SupportVector x{{0b001, 2}, {0b011, 1}, {0b101, 1}};
    CHECK(vp.eval(x) == 1);
}

TEST_CASE("rank-zero matroids have unit volume") {
    VolumePolynomial vp = volume_polynomial(from_boolean(1));
    REQUIRE(vp.terms.size() == 1);
    CHECK(vp.terms[0].flag.empty());
    CHECK(vp.terms[0].coef == 1);
    CHECK(vp.eval({}) == 1);
    CHECK(postnikov_volume(1, {}) == 1);
}

TEST_CASE("non-boolean matroids report the raw degree") {
    const Matroid m = k4();
    VolumePolynomial vp = volume_polynomial(m);
    CHECK(!vp.boolean_case);
    CHECK(vp.denominator_factorial == 2);

    // Indicator of a complete flag: one edge inside one triangle.
    SupportVector x{{0b000001, 1}, {0b001011, 1}};
    CHECK(vp.eval(x) == -1);
    CHECK(eval_volume(m, x) == -1);
}

TEST_CASE("non-submodular boolean input evaluates with a warning") {
    const Matroid b3 = from_boolean(3);
    Diagnostics diag;
    CHECK(eval_volume(b3, SupportVector{{0b011, 1}}, &diag) == Rat(-1, 2));
    REQUIRE(diag.warnings.size() == 1);
    CHECK(diag.warnings[0].find("submodular") != std::string::npos);
}

TEST_CASE("support validation") {
    const Matroid u23 = from_uniform(2, 3);
    CHECK_THROWS_AS(eval_volume(u23, SupportVector{{0b011, 1}}), InputError);
    CHECK_THROWS_AS(eval_volume(u23, SupportVector{{0, 1}}), InputError);
    CHECK_THROWS_AS(eval_volume(u23, SupportVector{{0b111, 1}}), InputError);
    CHECK_THROWS_AS(eval_volume(u23, SupportVector{{0b11011, 1}}), InputError);
    // A zero value on a non-flat is tolerated; only supported keys must be flats.
    CHECK(eval_volume(u23, SupportVector{{0b011, 0}, {0b001, 1}}) == 1);
}

TEST_CASE("weight validation and guards") {
    CHECK_THROWS_AS(postnikov_volume(9, {}), GuardError);
    CHECK_THROWS_AS(postnikov_volume(3, MinkowskiWeights{{0b011, -1}}), InputError);
    CHECK_THROWS_AS(postnikov_volume(3, MinkowskiWeights{{0, 1}}), InputError);
    CHECK_THROWS_AS(postnikov_volume(3, MinkowskiWeights{{0b1111, 1}}), InputError);

    CHECK_THROWS_AS(minkowski_to_support(17, {}), GuardError);
    CHECK_THROWS_AS(minkowski_to_support(3, MinkowskiWeights{{0, 1}}), InputError);
    CHECK_THROWS_AS(minkowski_to_support(3, MinkowskiWeights{{0b011, -2}}), InputError);

    MinkowskiWeights wide;
    for (Mask g = 1; g <= 40; ++g) wide[g] = 1;
    CHECK_THROWS_AS(postnikov_volume(8, wide), GuardError);
}

TEST_CASE("the term guard refuses oversized expansions") {
    CHECK_THROWS_AS(volume_polynomial(from_boolean(7)), GuardError);

    // With a raised guard the headline coefficient comes out directly.
    VolumePolynomial vp = volume_polynomial(from_boolean(7), 400000);
    const VolumeTerm* t = find_term(vp, {0b0000011, 0b0011111, 0b0111111}, {3, 2, 1});
    REQUIRE(t != nullptr);
    CHECK(t->coef == -240);
}
