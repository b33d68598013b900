#include "doctest.h"

#include <random>

#include "fqmzv/poly.hpp"

using namespace fqmzv;

namespace {

Poly random_poly(const FieldPtr& F, std::mt19937_64& rng, int maxdeg) {
    std::uniform_int_distribution<int> dd(0, maxdeg);
    std::uniform_int_distribution<uint32_t> dc(0, F->q() - 1);
    int d = dd(rng);
    std::vector<uint16_t> c(static_cast<size_t>(d) + 1);
    for (auto& x : c) x = static_cast<uint16_t>(dc(rng));
    return Poly(F, std::move(c));
}

}  // namespace

TEST_CASE("degree is a sentinel for zero and adds under multiplication") {
    auto F = Field::make(3);
    CHECK(!Poly::zero(F).degree().has_value());
    std::mt19937_64 rng(7);
    for (int it = 0; it < 200; ++it) {
        Poly a = random_poly(F, rng, 12), b = random_poly(F, rng, 12);
        if (a.is_zero() || b.is_zero()) continue;
        CHECK(*(a * b).degree() == *a.degree() + *b.degree());
    }
}

TEST_CASE("divmod and gcd over several fields") {
    std::mt19937_64 rng(11);
    for (auto F : {Field::make(2), Field::make(3), Field::make(2, 2)}) {
        for (int it = 0; it < 150; ++it) {
            Poly a = random_poly(F, rng, 20), b = random_poly(F, rng, 10);
            if (b.is_zero()) continue;
            auto [q, r] = Poly::divmod(a, b);
            CHECK(q * b + r == a);
            if (!r.is_zero()) CHECK(*r.degree() < *b.degree());
            Poly g = Poly::gcd(a, b);
            if (!a.is_zero()) {
                CHECK(Poly::divides(g, a));
                CHECK(Poly::divides(g, b));
                CHECK(g.is_monic());
            }
        }
    }
}

TEST_CASE("irreducibility: the spec cases") {
    auto F2 = Field::make(2);
    // theta^2 + theta + 1: the only irreducible quadratic over F_2
    CHECK(irreducible_check(Poly(F2, {1, 1, 1})));
    // theta^2 + 1 = (theta+1)^2
    CHECK(!irreducible_check(Poly(F2, {1, 0, 1})));
    auto F3 = Field::make(3);
    // theta^2 + 1 over F_3: no roots (exhaustive), degree 2, hence irreducible
    CHECK(irreducible_check(Poly(F3, {1, 0, 1})));
    bool has_root = false;
    for (uint16_t c = 0; c < 3; ++c)
        if (Poly(F3, {1, 0, 1}).eval(FqElem(F3, c)).is_zero()) has_root = true;
    CHECK(!has_root);
    CHECK_THROWS_AS(irreducible_check(Poly::zero(F2)), std::invalid_argument);
}

TEST_CASE("monic enumeration") {
    auto F2 = Field::make(2);
    auto d1 = monic_enumerate(F2, 1);
    REQUIRE(d1.size() == 2);
    CHECK(d1[0] == Poly::theta(F2));
    CHECK(d1[1] == Poly(F2, {1, 1}));
    CHECK(monic_enumerate(F2, 0).size() == 1);
    CHECK(monic_enumerate(F2, 0)[0].is_one());
    auto F3 = Field::make(3);
    CHECK(monic_enumerate(F3, 2).size() == 9);
}

TEST_CASE("L factorials") {
    auto F2 = Field::make(2);
    CHECK(L_factorial(F2, 0).is_one());
    // L_1 = theta - theta^q = theta + theta^2 in char 2
    CHECK(L_factorial(F2, 1) == Poly(F2, {0, 1, 1}));
    CHECK(*L_factorial(F2, 3).degree() == 2 + 4 + 8);
    auto F3 = Field::make(3);
    CHECK(*L_factorial(F3, 2).degree() == 3 + 9);
}

TEST_CASE("frobenius spreads coefficients and is a ring map") {
    auto F2 = Field::make(2);
    CHECK(Poly::theta(F2).frobenius(1) == Poly(F2, {0, 0, 1}));
    // (theta+1)^2 = theta^2 + 1 in char 2
    CHECK(Poly(F2, {1, 1}).frobenius(1) == Poly(F2, {1, 0, 1}));
    std::mt19937_64 rng(3);
    for (auto F : {Field::make(2), Field::make(3), Field::make(2, 2)}) {
        for (int it = 0; it < 100; ++it) {
            Poly a = random_poly(F, rng, 8), b = random_poly(F, rng, 8);
            CHECK((a + b).frobenius(1) == a.frobenius(1) + b.frobenius(1));
            CHECK((a * b).frobenius(1) == a.frobenius(1) * b.frobenius(1));
            CHECK(a.frobenius(1) == a.pow(F->q()));
        }
    }
}

TEST_CASE("binomials mod p: Lucas agrees with Pascal") {
    for (uint32_t p : {2u, 3u, 5u}) {
        std::vector<std::vector<uint16_t>> pascal(65);
        for (int n = 0; n <= 64; ++n) {
            pascal[static_cast<size_t>(n)].assign(static_cast<size_t>(n) + 1, 1);
            for (int k = 1; k < n; ++k)
                pascal[n][k] = static_cast<uint16_t>((pascal[n - 1][k - 1] + pascal[n - 1][k]) % p);
        }
        for (int n = 0; n <= 64; ++n)
            for (int k = 0; k <= n; ++k)
                CHECK(binomial_mod_p(static_cast<uint64_t>(n), static_cast<uint64_t>(k), p) == pascal[n][k]);
    }
    CHECK(binomial_mod_p(2, 1, 2) == 0);
    CHECK(binomial_mod_p(4, 2, 3) == 0);
    CHECK(binomial_mod_p(7, 3, 2) == 1);
    CHECK(binomial_mod_p(3, 7, 5) == 0);  // k > n
}
