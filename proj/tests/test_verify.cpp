#include <doctest.h>

#include "qpir/verify.hpp"

using namespace qpir;

namespace {

FieldPtr f7 = Field::make(7);

} // namespace

TEST_CASE("independence and orthogonality checks pass on the worked instance") {
    SchemeParams p = derive_params(7, 6, 3, 2, 2);
    SchemeCodes codes = build_codes(f7.get(), p);
    Lemma5Report rep = lemma5_checks(codes, p);
    CHECK(rep.cond_a);
    CHECK(rep.cond_b);
    CHECK(rep.exhaustive); // n = 6 <= 8
    CHECK(rep.subsets_checked == 15); // C(6, 4)
    CHECK(!rep.witness.has_value());
}

TEST_CASE("independence check fails on a designed degenerate system") {
    // duplicate one generator column: the subset containing both copies of
    // the server drops rank
    SchemeParams p = derive_params(7, 6, 3, 2, 2);
    SchemeCodes codes = build_codes(f7.get(), p);
    SchemeCodes broken = codes;
    Matrix& g = broken.bundle.G_S;
    for (size_t r = 0; r < g.rows(); ++r) {
        g.at(r, 1) = g.at(r, 0);
        g.at(r, 1 + p.n_eff) = g.at(r, p.n_eff);
    }
    Lemma5Report rep = lemma5_checks(broken, p);
    CHECK(!rep.cond_a);
    REQUIRE(rep.witness.has_value());
    // the reported witness subset must actually be rank-deficient
    std::vector<size_t> cols;
    for (size_t s : *rep.witness) {
        cols.push_back(s);
        cols.push_back(s + p.n_eff);
    }
    CHECK(rank(g.select_cols(cols)) < 2 * (p.k + p.t_eff - 1));
}

TEST_CASE("collusion-set rank condition holds for every t-subset") {
    SchemeParams p = derive_params(7, 6, 3, 2, 2);
    SchemeCodes codes = build_codes(f7.get(), p);
    CHECK(user_privacy_all_subsets(codes, p));
    // spot check individual subsets
    CHECK(user_privacy_rank(codes, {0, 5}));
    CHECK(user_privacy_rank(codes, {2, 3}));
    // degenerate codes fail: duplicate a D' column so the pair {0, 1} is
    // linearly dependent
    SchemeCodes broken = codes;
    Matrix& gd = broken.g_d;
    for (size_t r = 0; r < gd.rows(); ++r) {
        gd.at(r, 1) = gd.at(r, 0);
        gd.at(r, 1 + p.n_eff) = gd.at(r, p.n_eff);
    }
    CHECK(!user_privacy_rank(broken, {0, 1}));
}

TEST_CASE("empirical query-view test: indistinguishable with randomness, exposed without") {
    FieldPtr f3 = Field::make(3);
    SchemeParams p = derive_params(3, 3, 1, 2, 2);
    SchemeCodes codes = build_codes(f3.get(), p);
    std::vector<size_t> T = {0, 1};

    PrivacyReport rep = user_privacy_empirical(p, codes, T, 0, 1, 20000, 5);
    CHECK(rep.algebraic_ok);
    CHECK(!rep.distinguishable);
    CHECK(rep.p_value >= 0.01);
    CHECK(rep.samples == 20000);

    PrivacyReport leak = user_privacy_empirical(p, codes, T, 0, 1, 20000, 5,
                                                /*zero_randomness=*/true);
    CHECK(leak.distinguishable);
    CHECK(leak.p_value < 0.01);
}

TEST_CASE("empirical test rejects oversized view supports") {
    SchemeParams p = derive_params(7, 6, 3, 2, 2);
    SchemeCodes codes = build_codes(f7.get(), p);
    // view support 7^(2*2*2) >> 10^4
    CHECK_THROWS_WITH_AS(user_privacy_empirical(p, codes, {0, 1}, 0, 1, 100, 1),
                         doctest::Contains("SupportTooLarge"), Error);
}

TEST_CASE("measurement outputs are file-independent off the requested index") {
    SchemeParams p = derive_params(7, 6, 3, 2, 2);
    SchemeCodes codes = build_codes(f7.get(), p);
    Rng r1(10), r2(20);
    Matrix x1 = r1.uniform_matrix(f7.get(), p.m * p.beta, 2 * p.k);
    Matrix x2 = r2.uniform_matrix(f7.get(), p.m * p.beta, 2 * p.k);
    size_t K = 0;
    // same file K, different other files
    for (size_t b = 0; b < p.beta; ++b)
        x2.set_row(coord(K, b, p.beta, p.m), x1.row(coord(K, b, p.beta, p.m)));
    ServerPrivacyResult res = server_privacy_check(p, codes, x1, x2, K, 7);
    CHECK(res.identical);
    CHECK(!res.differing_round.has_value());

    // negative control: changing file K itself must show up
    Rng r3(30);
    Matrix x3 = r3.uniform_matrix(f7.get(), p.m * p.beta, 2 * p.k);
    ServerPrivacyResult neg = server_privacy_check(p, codes, x1, x3, K, 7);
    CHECK(!neg.identical);
    CHECK(neg.differing_round.has_value());
}

TEST_CASE("pairwise star span identity on the worked codes") {
    SchemeParams p = derive_params(7, 6, 3, 2, 2);
    SchemeCodes codes = build_codes(f7.get(), p);
    CHECK(star_span_bruteforce(codes.cp, codes.dp));
}
