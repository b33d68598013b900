#include "doctest.h"

#include <random>

#include "fqmzv/completions.hpp"

using namespace fqmzv;

namespace {

RatFunc rrat(const FieldPtr& F, std::mt19937_64& rng, int maxdeg) {
    std::uniform_int_distribution<int> dd(0, maxdeg);
    std::uniform_int_distribution<uint32_t> dc(0, F->q() - 1);
    auto mk = [&] {
        int d = dd(rng);
        std::vector<uint16_t> c(static_cast<size_t>(d) + 1);
        for (auto& x : c) x = static_cast<uint16_t>(dc(rng));
        return Poly(F, std::move(c));
    };
    Poly n = mk(), d = mk();
    while (d.is_zero()) d = mk();
    return RatFunc(n, d);
}

}  // namespace

TEST_CASE("embed_inf: geometric series and monomials") {
    auto F = Field::make(2);
    // 1/(theta-1) = 1/(theta+1) = theta^-1 + theta^-2 + theta^-3 + ...
    InfSeries s = embed_inf(RatFunc(Poly::one(F), Poly(F, {1, 1})), 3);
    CHECK(s.valuation() == 1);
    CHECK(s.coeff(1) == 1);
    CHECK(s.coeff(2) == 1);
    CHECK(s.coeff(3) == 1);
    CHECK(s.precision() == 3);
    InfSeries th = embed_inf(RatFunc::theta(F), 5);
    CHECK(th.valuation() == -1);
    CHECK(th.coeff(-1) == 1);
    CHECK(th.coeff(0) == 0);
    InfSeries z = embed_inf(RatFunc::zero(F), 4);
    CHECK(z.is_zero_state());
}

TEST_CASE("embed_v: spec examples") {
    auto F = Field::make(2);
    auto P = std::make_shared<Place>(F, Poly::theta(F));
    // theta at v=theta: single digit at exponent 1
    VAdicSeries s = embed_v(RatFunc::theta(F), P, 5);
    CHECK(s.valuation() == 1);
    CHECK(s.digit(1).is_one());
    CHECK(s.digit(2).is_zero());
    // 1/(theta-1) = 1 + theta + theta^2 + O(theta^3) in char 2
    VAdicSeries g = embed_v(RatFunc(Poly::one(F), Poly(F, {1, 1})), P, 2);
    CHECK(g.valuation() == 0);
    CHECK(g.digit(0).is_one());
    CHECK(g.digit(1).is_one());
    CHECK(g.digit(2).is_one());
    // 1/theta: valuation -1, digit 1
    VAdicSeries h = embed_v(RatFunc(Poly::one(F), Poly::theta(F)), P, 3);
    CHECK(h.valuation() == -1);
    CHECK(h.digit(-1).is_one());
}

TEST_CASE("series arithmetic: precision rules and ultrametric") {
    auto F = Field::make(3);
    auto P = std::make_shared<Place>(F, Poly::theta(F));
    std::mt19937_64 rng(23);
    for (int it = 0; it < 500; ++it) {
        RatFunc a = rrat(F, rng, 5), b = rrat(F, rng, 5);
        InfSeries ea = embed_inf(a, 25), eb = embed_inf(b, 25);
        // round trip through products
        InfSeries prod = ea * eb;
        InfSeries direct = embed_inf(a * b, prod.precision());
        auto m = match_through(prod, direct, prod.precision());
        CHECK(m.equal);
        // x + (-x) is the zero state
        CHECK((ea - ea).is_zero_state());
        // ultrametric
        if (!a.is_zero() && !b.is_zero() && !(a + b).is_zero()) {
            long long va = -*a.val_inf(), vb = -*b.val_inf(), vs = -*(a + b).val_inf();
            CHECK(-vs >= std::min(-va, -vb));
            if (va != vb) CHECK(-vs == std::min(-va, -vb));
        }
        // v-adic round trip
        VAdicSeries xa = embed_v(a, P, 20), xb = embed_v(b, P, 20);
        VAdicSeries vprod = xa * xb;
        auto mv = match_through(vprod, embed_v(a * b, P, vprod.precision()), vprod.precision());
        CHECK(mv.equal);
        if (!b.is_zero()) {
            VAdicSeries quot = xa / xb;
            auto md = match_through(quot, embed_v(a / b, P, quot.precision()), quot.precision());
            CHECK(md.equal);
        }
    }
}

TEST_CASE("(1/theta) * theta = 1") {
    auto F = Field::make(2);
    InfSeries a = embed_inf(RatFunc(Poly::one(F), Poly::theta(F)), 10);
    InfSeries b = embed_inf(RatFunc::theta(F), 10);
    InfSeries p = a * b;
    CHECK(p.valuation() == 0);
    CHECK(p.coeff(0) == 1);
    auto m = match_through(p, embed_inf(RatFunc::one(F), p.precision()), p.precision());
    CHECK(m.equal);
}

TEST_CASE("digit reassembly: sum a_n v^n = x mod v^{M+1}") {
    auto F = Field::make(3);
    Poly v(F, {1, 0, 1});  // theta^2+1, irreducible over F_3
    auto P = std::make_shared<Place>(F, v);
    std::mt19937_64 rng(31);
    for (int it = 0; it < 50; ++it) {
        RatFunc x = rrat(F, rng, 6);
        if (x.is_zero()) continue;
        long long M = 8;
        VAdicSeries s = embed_v(x, P, M);
        if (s.is_zero_state()) continue;
        if (s.valuation() < 0) continue;  // integral reassembly only
        Poly acc = Poly::zero(F);
        for (long long n = s.valuation(); n <= M; ++n) acc += s.digit(n) * P->v_pow(static_cast<unsigned>(n));
        // clearing the unit denominator: x*den = num; acc*den = num mod v^{M+1}
        Poly diff = acc * x.den() - x.num();
        CHECK(Poly::divides(P->v_pow(static_cast<unsigned>(M + 1)), diff));
    }
}

TEST_CASE("no coefficient beyond the declared precision is readable") {
    auto F = Field::make(2);
    InfSeries s = embed_inf(RatFunc::theta(F), 4);
    CHECK_THROWS_AS((void)s.coeff(5), std::out_of_range);
    auto P = std::make_shared<Place>(F, Poly::theta(F));
    VAdicSeries t = embed_v(RatFunc::theta(F), P, 4);
    CHECK_THROWS_AS((void)t.digit(5), std::out_of_range);
}

TEST_CASE("compare_magnitude: exact boundary cases") {
    // q=2: |theta|_inf vs q^{q/(q-1)} = q^2: val=-1, strict 2 < 4 true
    CHECK(compare_magnitude(-1, 1, {2, 1}, true));
    // |theta^2|_inf vs q^2: 4 <= 4 non-strict true, strict false
    CHECK(compare_magnitude(-2, 1, {2, 1}, false));
    CHECK(!compare_magnitude(-2, 1, {2, 1}, true));
    // |1|_v vs 1 = q^0: non-strict true, strict false
    CHECK(compare_magnitude(0, 1, {0, 1}, false));
    CHECK(!compare_magnitude(0, 1, {0, 1}, true));
    // fractional exponent: |theta|_inf < q^{3/2}? 1 < 3/2: true
    CHECK(compare_magnitude(-1, 1, {3, 2}, true));
    // place of degree 2: |x|_v = q^{-2 val}; val=1 against q^{-3}:
    // -2 < -3 false non-strict
    CHECK(!compare_magnitude(1, 2, {-3, 1}, false));
    CHECK(compare_magnitude(2, 2, {-3, 1}, false));
}

TEST_CASE("zero-to-precision is tagged, never a fabricated valuation") {
    auto F = Field::make(2);
    InfSeries z = InfSeries::zero_to_precision(F, 7);
    CHECK(z.is_zero_state());
    CHECK_THROWS_AS((void)z.valuation(), std::domain_error);
    CHECK(z.is_zero_through(7));
    CHECK_THROWS_AS((void)z.is_zero_through(8), std::domain_error);
}
