#include "doctest.h"

#include <random>

#include "fqmzv/field.hpp"

using namespace fqmzv;

TEST_CASE("prime field arithmetic") {
    auto F3 = Field::make(3);
    CHECK(F3->q() == 3);
    CHECK(F3->add(2, 2) == 1);
    CHECK(F3->mul(2, 2) == 1);
    CHECK(F3->inv(2) == 2);
    CHECK(F3->neg(1) == 2);
    CHECK_THROWS_AS(Field::make(4), std::invalid_argument);
    CHECK_THROWS_AS(Field::make(1), std::invalid_argument);
    CHECK_THROWS_AS((void)F3->inv(0), std::domain_error);
}

TEST_CASE("canonical modulus is the lexicographically least irreducible") {
    auto F4 = Field::make(2, 2);
    CHECK(F4->q() == 4);
    CHECK(F4->modulus() == std::vector<uint16_t>{1, 1, 1});  // x^2 + x + 1
    auto F8 = Field::make(2, 3);
    CHECK(F8->modulus() == std::vector<uint16_t>{1, 1, 0, 1});  // x^3 + x + 1
    auto F9 = Field::make(3, 2);
    // x^2 + 1 is irreducible over F_3 and least: tuple (c1,c0) = (0,1)
    CHECK(F9->modulus() == std::vector<uint16_t>{1, 0, 1});
}

TEST_CASE("explicit modulus is validated") {
    CHECK_THROWS_AS(Field::make(2, 2, {1, 0, 1}), std::invalid_argument);  // (x+1)^2
    auto F4 = Field::make(2, 2, {1, 1, 1});
    CHECK(F4->q() == 4);
}

TEST_CASE("field axioms on random triples") {
    for (auto Fp : {Field::make(2, 2), Field::make(3), Field::make(5), Field::make(2, 4)}) {
        std::mt19937_64 rng(12345);
        std::uniform_int_distribution<uint32_t> dist(0, Fp->q() - 1);
        for (int it = 0; it < 1000; ++it) {
            uint16_t a = static_cast<uint16_t>(dist(rng));
            uint16_t b = static_cast<uint16_t>(dist(rng));
            uint16_t c = static_cast<uint16_t>(dist(rng));
            CHECK(Fp->add(a, Fp->add(b, c)) == Fp->add(Fp->add(a, b), c));
            CHECK(Fp->mul(a, Fp->mul(b, c)) == Fp->mul(Fp->mul(a, b), c));
            CHECK(Fp->mul(a, Fp->add(b, c)) == Fp->add(Fp->mul(a, b), Fp->mul(a, c)));
            CHECK(Fp->add(a, Fp->neg(a)) == 0);
            if (a != 0) CHECK(Fp->mul(a, Fp->inv(a)) == 1);
        }
    }
}

TEST_CASE("x^q fixes every element of F_q") {
    auto F = Field::make(2, 3);
    for (uint32_t a = 0; a < F->q(); ++a) CHECK(F->pow(static_cast<uint16_t>(a), F->q()) == a);
}
