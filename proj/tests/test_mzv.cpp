#include "doctest.h"

#include "fqmzv/mzv.hpp"

using namespace fqmzv;

namespace {

struct Fixture {
    FieldPtr F;
    PlacePtr P;
    EvalContext ctx;
    explicit Fixture(uint32_t p, uint32_t e = 1, Poly v = Poly())
        : F(Field::make(p, e)),
          P(std::make_shared<Place>(F, v.is_zero() ? Poly::theta(Field::make(p, e)) : v)),
          ctx(F, P) {}
};

}  // namespace

TEST_CASE("power sums: closed small cases and the valuation bound") {
    Fixture fx(2);
    SUBCASE("q=2: S_1(1) = 1/(theta^2+theta), so zeta_A(1) partial = 1 + 1/(theta^2+theta)") {
        RatFunc s1 = power_sum_exact(fx.ctx, 1, 1);
        CHECK(s1 == RatFunc(Poly::one(fx.F), Poly(fx.F, {0, 1, 1})));
        RatFunc partial = zeta_truncated_exact(fx.ctx, Index({1}), 1);
        CHECK(partial == RatFunc::one(fx.F) + s1);
    }
    SUBCASE("S_d(1) = 1/L_d (massive cancellation behind the tail bound)") {
        for (uint32_t q : {2u, 3u}) {
            Fixture f2(q);
            for (int d = 0; d <= 3; ++d)
                CHECK(power_sum_exact(f2.ctx, d, 1) ==
                      RatFunc(Poly::one(f2.F), L_factorial(f2.F, static_cast<unsigned>(d))));
        }
    }
    SUBCASE("series variant matches the exact one") {
        for (int d = 0; d <= 4; ++d)
            for (int s = 1; s <= 3; ++s) {
                InfSeries a = power_sum_series(fx.ctx, d, s, 30);
                CHECK(match_through(a, embed_inf(power_sum_exact(fx.ctx, d, s), 30), 30).equal);
            }
    }
}

TEST_CASE("zeta DP equals brute force, exact, q in {2,3}, wt <= 4, dep <= 2, D <= 3") {
    for (uint32_t q : {2u, 3u}) {
        Fixture fx(q);
        std::vector<Index> grid;
        for (int s1 = 1; s1 <= 4; ++s1) grid.push_back(Index({s1}));
        for (int s1 = 1; s1 <= 3; ++s1)
            for (int s2 = 1; s1 + s2 <= 4; ++s2) grid.push_back(Index({s1, s2}));
        for (const Index& s : grid)
            for (int D = 0; D <= 3; ++D)
                CHECK(zeta_truncated_exact(fx.ctx, s, D) == zeta_brute_exact(fx.ctx, s, D));
    }
}

TEST_CASE("depth with no room gives the empty sum") {
    Fixture fx(2);
    CHECK(zeta_truncated_exact(fx.ctx, Index({1, 1, 1}), 1).is_zero());
}

TEST_CASE("zeta_inf matches its exact truncation") {
    Fixture fx(2);
    long long N = 30;
    for (const Index& s : {Index({1}), Index({2}), Index({2, 1})}) {
        InfSeries z = zeta_inf(fx.ctx, s, N);
        int D = zeta_degree_cutoff(fx.F, s, N);
        CHECK(match_through(z, embed_inf(zeta_truncated_exact(fx.ctx, s, D), N), N).equal);
    }
}

TEST_CASE("zeta_A(s) = Li*_s(1) for s <= q (numeric, N = 40)") {
    for (uint32_t q : {2u, 3u}) {
        Fixture fx(q);
        for (int s = 1; s <= static_cast<int>(q); ++s) {
            InfSeries z = zeta_inf(fx.ctx, Index({s}), 40);
            InfSeries li = li_star_inf(fx.ctx, Index({s}), {RatFunc::one(fx.F)}, 40);
            CHECK(match_through(z, li, 40).equal);
        }
    }
}

TEST_CASE("certificates") {
    Fixture fx(2);
    SUBCASE("built-in depth-one certificates verify") {
        for (int s = 1; s <= 2; ++s) {
            Certificate c = builtin_certificate(fx.F, s);
            auto v = verify_certificate(fx.ctx, c, 40);
            CHECK(v.pass);
        }
        CHECK_THROWS_AS((void)builtin_certificate(fx.F, 3), std::invalid_argument);
    }
    SUBCASE("corrupted coefficient fails with the first mismatching exponent") {
        Certificate c = builtin_certificate(fx.F, 2);
        c.terms[0].b = RatFunc::theta(fx.F);  // deliberately wrong
        auto v = verify_certificate(fx.ctx, c, 30);
        CHECK(!v.pass);
        CHECK(v.structural_ok);
        CHECK(v.first_mismatch <= 30);
        // and zeta_v must refuse it
        CHECK_THROWS_AS((void)zeta_v(fx.ctx, Index({2}), 10, c, 30), std::invalid_argument);
    }
    SUBCASE("depth-two certificate: zeta(1,1) = Li*_{(1,1)}(1,1) - Li*_{(2)}(1), verdict computed") {
        Certificate c;
        c.target = Index({1, 1});
        c.terms.push_back(CertTerm{-RatFunc::one(fx.F), Index({1, 1}), {Poly::one(fx.F), Poly::one(fx.F)}});
        c.terms.push_back(CertTerm{-RatFunc::one(fx.F), Index({2}), {Poly::one(fx.F)}});
        c.provenance = "star/strict splitting of the double sum, S_d(1) = 1/L_d and S_d(2) = 1/L_d^2";
        auto v = verify_certificate(fx.ctx, c, 35);
        CHECK(v.pass);
    }
    SUBCASE("structural violations are reported") {
        Certificate c;
        c.target = Index({2});
        c.terms.push_back(CertTerm{RatFunc::one(fx.F), Index({3}), {Poly::one(fx.F)}});
        auto v = verify_certificate(fx.ctx, c, 20);
        CHECK(!v.pass);
        CHECK(!v.structural_ok);
    }
}

TEST_CASE("v-adic zeta values") {
    SUBCASE("q=4: zeta(1)_theta = (1/(theta-1)) Li*_1(theta)_theta, nonzero") {
        Fixture fx(2, 2);
        long long M = 15;
        VAdicSeries z = zeta_v_depth1(fx.ctx, 1, M, 30);
        VAdicSeries li = li_star_v_conv(fx.ctx, Index({1}), {RatFunc::theta(fx.F)}, M);
        VAdicSeries expect = li / embed_v(RatFunc(Poly(fx.F, {1, 1})), fx.P, M + 2);
        CHECK(match_through(z, expect, M).equal);
        CHECK(!z.is_zero_state());
        CHECK(z.valuation() <= M);
    }
    SUBCASE("q=2 trivial zeros: zeta(1)_theta and zeta(2)_theta vanish") {
        Fixture fx(2);
        CHECK(zeta_v_depth1(fx.ctx, 1, 20, 40).is_zero_through(20));
        CHECK(zeta_v_depth1(fx.ctx, 2, 20, 40).is_zero_through(20));
    }
    SUBCASE("q=3 trivial zero: zeta(2)_v vanishes at v = theta and v = theta^2+1") {
        Fixture fa(3);
        CHECK(zeta_v_depth1(fa.ctx, 2, 12, 35).is_zero_through(12));
        Fixture fb(3, 1, Poly(Field::make(3), {1, 0, 1}));
        CHECK(zeta_v_depth1(fb.ctx, 2, 8, 35).is_zero_through(8));
    }
}

TEST_CASE("chen_product: structure of the emitted relations") {
    SUBCASE("q=2, r=s=1: zeta(1)^2 = zeta(2) (everything else cancels mod 2)") {
        auto F = Field::make(2);
        QShuffleRelation rel = chen_product(F, 1, 1);
        REQUIRE(rel.rhs.size() == 1);
        CHECK(rel.rhs[0].first == Index({2}));
        CHECK(rel.rhs[0].second == 1);
    }
    SUBCASE("r = s merges the symmetric pair") {
        auto F = Field::make(3);
        QShuffleRelation rel = chen_product(F, 2, 2);
        for (const auto& [idx, c] : rel.rhs)
            if (idx == Index({2, 2})) CHECK(c == 2);
    }
    SUBCASE("q=3, r=1, s=2 emitted and validated by the infinity-adic oracle") {
        Fixture fx(3);
        QShuffleRelation rel = chen_product(fx.F, 1, 2);
        auto rep = verify_relation_inf(fx.ctx, rel, 30);
        CHECK(rep.verdict == RelationVerdict::PASS);
    }
}

TEST_CASE("q-shuffle relations hold infinity-adically: r+s <= 4, q in {2,3}") {
    for (uint32_t q : {2u, 3u}) {
        Fixture fx(q);
        for (int r = 1; r <= 3; ++r)
            for (int s = 1; r + s <= 4; ++s) {
                QShuffleRelation rel = chen_product(fx.F, r, s);
                auto rep = verify_relation_inf(fx.ctx, rel, 30);
                CHECK(rep.verdict == RelationVerdict::PASS);
            }
    }
}

TEST_CASE("v-adic relation checks") {
    SUBCASE("q=4, zeta(1)^2 = zeta(2) at v=theta with both sides nonzero") {
        Fixture fx(2, 2);
        QShuffleRelation rel = chen_product(fx.F, 1, 1);
        std::map<Index, Certificate> certs;
        certs.emplace(Index({1}), builtin_certificate(fx.F, 1));
        certs.emplace(Index({2}), builtin_certificate(fx.F, 2));
        auto rep = verify_relation_v(fx.ctx, rel, 12, certs, 30);
        CHECK(rep.verdict == RelationVerdict::PASS);
        CHECK(!zeta_v_depth1(fx.ctx, 1, 12, 30).is_zero_state());
    }
    SUBCASE("q=2, same relation passes as 0 = 0") {
        Fixture fx(2);
        QShuffleRelation rel = chen_product(fx.F, 1, 1);
        std::map<Index, Certificate> certs;
        certs.emplace(Index({1}), builtin_certificate(fx.F, 1));
        certs.emplace(Index({2}), builtin_certificate(fx.F, 2));
        auto rep = verify_relation_v(fx.ctx, rel, 15, certs, 30);
        CHECK(rep.verdict == RelationVerdict::PASS);
    }
    SUBCASE("missing certificate: explicit cannot-check") {
        Fixture fx(2);
        QShuffleRelation rel = chen_product(fx.F, 1, 1);
        std::map<Index, Certificate> certs;
        certs.emplace(Index({1}), builtin_certificate(fx.F, 1));
        auto rep = verify_relation_v(fx.ctx, rel, 10, certs, 20);
        CHECK(rep.verdict == RelationVerdict::CANNOT_CHECK);
    }
}
