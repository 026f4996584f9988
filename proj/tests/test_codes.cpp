#include <doctest.h>

#include "qpir/codes.hpp"
#include "qpir/verify.hpp"

using namespace qpir;

namespace {

FieldPtr f7 = Field::make(7);

GrsCode example_c_prime() {
    Vec loc = default_locators(f7.get(), 6);
    return GrsCode{f7.get(), loc, Vec(6, f7->one()), 3};
}

} // namespace

TEST_CASE("generator matches the worked [6,3] example") {
    GrsCode cp = example_c_prime();
    Matrix g = cp.generator();
    auto e = [&](uint64_t v) { return f7->element(v); };
    Matrix expect = Matrix::from_rows(f7.get(), {
        {e(1), e(1), e(1), e(1), e(1), e(1)},
        {e(1), e(3), e(2), e(6), e(4), e(5)},
        {e(1), e(2), e(4), e(1), e(2), e(4)},
    });
    CHECK(g == expect);
}

TEST_CASE("degenerate generators") {
    Vec loc = default_locators(f7.get(), 6);
    GrsCode k1{f7.get(), loc, Vec(6, f7->one()), 1};
    Matrix g1 = k1.generator();
    for (size_t c = 0; c < 6; ++c) CHECK(g1.at(0, c) == f7->one());

    GrsCode full{f7.get(), loc, Vec(6, f7->one()), 6};
    CHECK(rank(full.generator()) == 6);
}

TEST_CASE("dual generator spans the kernel of the generator") {
    GrsCode cp = example_c_prime();
    GrsCode d = cp.dual();
    CHECK(d.dim == 3);
    CHECK((d.generator() * cp.generator().transposed()).is_zero());
    CHECK(same_row_space(d.generator(), kernel(cp.generator())));

    // biduality as row spaces
    CHECK(same_row_space(d.dual().generator(), cp.generator()));

    // [6,1] all-ones code
    GrsCode ones{f7.get(), cp.locators, cp.multipliers, 1};
    GrsCode od = ones.dual();
    CHECK(od.dim == 5);
    CHECK(same_row_space(od.generator(), kernel(ones.generator())));
}

TEST_CASE("star product of GRS codes") {
    GrsCode cp = example_c_prime();
    GrsCode dp{f7.get(), cp.locators, cp.multipliers, 2};
    GrsCode sp = star_grs(cp, dp);
    CHECK(sp.dim == 4);
    CHECK(min_distance_bruteforce(sp) == 3);
    CHECK(star_span_bruteforce(cp, dp));

    // all-ones D' of dimension 1 leaves the code unchanged
    GrsCode one{f7.get(), cp.locators, cp.multipliers, 1};
    GrsCode s1 = star_grs(cp, one);
    CHECK(same_row_space(s1.generator(), cp.generator()));

    GrsCode other{f7.get(), default_locators(f7.get(), 5), Vec(5, f7->one()), 2};
    CHECK_THROWS_WITH_AS(star_grs(cp, other), doctest::Contains("LocatorMismatch"), Error);
    GrsCode big{f7.get(), cp.locators, cp.multipliers, 5};
    CHECK_THROWS_WITH_AS(star_grs(cp, big), doctest::Contains("DimensionOverflow"), Error);
}

TEST_CASE("self-dual construction in characteristic 2") {
    for (auto [q, n] : std::vector<std::pair<uint64_t, size_t>>{{8, 4}, {16, 8}}) {
        FieldPtr f = Field::make(2, q == 8 ? 3 : 4);
        Vec loc = default_locators(f.get(), n);
        GrsCode sd = self_dual_grs_char2(f.get(), loc);
        CHECK(sd.dim == n / 2);
        Matrix g = sd.generator();
        CHECK(same_row_space(g, kernel(g))); // C^perp = C
    }
    CHECK_THROWS_WITH_AS(self_dual_grs_char2(f7.get(), default_locators(f7.get(), 4)),
                         doctest::Contains("OddCharacteristic"), Error);
}

TEST_CASE("weakly self-dual construction in characteristic 2") {
    FieldPtr f8 = Field::make(2, 3);
    Vec loc = default_locators(f8.get(), 6);
    SUBCASE("k between n/2 and n") {
        GrsCode c = weakly_self_dual_grs_char2(f8.get(), loc, 4);
        CHECK(is_weakly_self_dual(c));
    }
    SUBCASE("k = n/2 gives a self-dual code") {
        GrsCode c = weakly_self_dual_grs_char2(f8.get(), loc, 3);
        Matrix g = c.generator();
        CHECK(same_row_space(g, kernel(g)));
    }
    SUBCASE("k = n is the full space, trivially weakly self-dual") {
        GrsCode c = weakly_self_dual_grs_char2(f8.get(), loc, 6);
        CHECK(is_weakly_self_dual(c));
    }
    CHECK_THROWS_WITH_AS(weakly_self_dual_grs_char2(f8.get(), loc, 2),
                         doctest::Contains("DimensionTooSmall"), Error);
}

TEST_CASE("weakly self-dual search in odd characteristic") {
    Vec loc = default_locators(f7.get(), 6);
    auto found = find_wsd_multipliers(f7.get(), loc, 4);
    REQUIRE(found.has_value());
    CHECK(is_weakly_self_dual(*found));
    CHECK_THROWS_WITH_AS(find_wsd_multipliers(f7.get(), loc, 2),
                         doctest::Contains("DimensionTooSmall"), Error);

    // char-2 search agrees with the constructive path as a duality property
    FieldPtr f8 = Field::make(2, 3);
    Vec loc8 = default_locators(f8.get(), 6);
    auto found8 = find_wsd_multipliers(f8.get(), loc8, 4);
    REQUIRE(found8.has_value());
    CHECK(is_weakly_self_dual(*found8));
}

TEST_CASE("retrieval code makes the star product weakly self-dual") {
    SUBCASE("[6,3], t=2 over GF(7)") {
        GrsCode cp = example_c_prime();
        GrsCode dp = retrieval_code(cp, 2);
        CHECK(dp.dim == 2);
        CHECK(is_weakly_self_dual(star_grs(cp, dp)));
    }
    SUBCASE("GF(8), n=6, k=2, t=2 gives a self-dual star code") {
        FieldPtr f8 = Field::make(2, 3);
        Vec loc = default_locators(f8.get(), 6);
        GrsCode cp{f8.get(), loc, Vec(6, f8->one()), 2};
        GrsCode sp = star_grs(cp, retrieval_code(cp, 2));
        Matrix g = sp.generator();
        CHECK(same_row_space(g, kernel(g)));
    }
    SUBCASE("constraint violation") {
        GrsCode cp = example_c_prime();
        CHECK_THROWS_WITH_AS(retrieval_code(cp, 4), doctest::Contains("ConstraintViolated"),
                             Error);
    }
}

TEST_CASE("is_weakly_self_dual") {
    GrsCode cp = example_c_prime();
    Vec loc = cp.locators;
    GrsCode full{f7.get(), loc, cp.multipliers, 6};
    CHECK(is_weakly_self_dual(full));
    // the unit-multiplier [6,3] C' itself: evaluate directly against the kernel
    Matrix g = cp.generator();
    bool expected = same_row_space(Matrix::vstack(g, kernel(g)), g);
    CHECK(is_weakly_self_dual(cp) == expected);
}

TEST_CASE("split of the weakly self-dual star code against the printed fixture") {
    GrsCode cp = example_c_prime();
    GrsCode sp = star_grs(cp, retrieval_code(cp, 2));
    StarGeneratorBundle bundle = split_wsd_generator(sp);
    auto e = [&](uint64_t v) { return f7->element(v); };
    Matrix h_fixture = Matrix::from_rows(f7.get(), {
        {e(1), e(3), e(2), e(6), e(4), e(5)},
        {e(1), e(2), e(4), e(1), e(2), e(4)},
    });
    Matrix g_fixture = Matrix::vstack(h_fixture, Matrix::from_rows(f7.get(), {
        {e(1), e(1), e(1), e(1), e(1), e(1)},
        {e(1), e(6), e(1), e(6), e(1), e(6)},
    }));
    // fixture comparison is by row space: H spans S'^perp, G spans S'
    CHECK(same_row_space(bundle.H, h_fixture));
    CHECK(same_row_space(Matrix::vstack(bundle.H, bundle.F), g_fixture));
    CHECK((bundle.H * sp.generator().transposed()).is_zero());
    CHECK(rank(bundle.G_S) == 2 * sp.dim);
    CHECK(bundle.G_S.rows() == 2 * sp.dim);
    CHECK(bundle.G_S.cols() == 12);

    GrsCode not_wsd{f7.get(), cp.locators, cp.multipliers, 2};
    if (!is_weakly_self_dual(not_wsd))
        CHECK_THROWS_WITH_AS(split_wsd_generator(not_wsd),
                             doctest::Contains("NotWeaklySelfDual"), Error);
}

TEST_CASE("MDS distance by enumeration") {
    GrsCode cp = example_c_prime();
    CHECK(min_distance_bruteforce(cp) == 4); // n - k + 1
    FieldPtr f8 = Field::make(2, 3);
    Vec loc = default_locators(f8.get(), 5);
    GrsCode c{f8.get(), loc, Vec(5, f8->one()), 2};
    CHECK(min_distance_bruteforce(c) == 4);
}

TEST_CASE("star span equals brute force on random GRS pairs over GF(8)") {
    FieldPtr f8 = Field::make(2, 3);
    for (size_t n : {4u, 6u, 8u}) {
        Vec loc = default_locators(f8.get(), n);
        for (size_t k = 1; k <= 3 && k <= n; ++k)
            for (size_t t = 1; k + t - 1 <= n && t <= 3; ++t) {
                Vec vc(n), vd(n);
                for (size_t j = 0; j < n; ++j) {
                    vc[j] = f8->element(1 + (j * 3 + k) % 7);
                    vd[j] = f8->element(1 + (j * 5 + t) % 7);
                }
                GrsCode cp{f8.get(), loc, vc, k};
                GrsCode dp{f8.get(), loc, vd, t};
                CHECK(star_span_bruteforce(cp, dp));
                CHECK(star_grs(cp, dp).dim == k + t - 1);
            }
    }
}
