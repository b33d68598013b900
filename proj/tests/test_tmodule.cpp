#include "doctest.h"

#include <random>

#include "fqmzv/tmodule.hpp"

using namespace fqmzv;

namespace {

Poly rpoly(const FieldPtr& F, std::mt19937_64& rng, int maxdeg) {
    std::uniform_int_distribution<int> dd(0, maxdeg);
    std::uniform_int_distribution<uint32_t> dc(0, F->q() - 1);
    int d = dd(rng);
    std::vector<uint16_t> c(static_cast<size_t>(d) + 1);
    for (auto& x : c) x = static_cast<uint16_t>(dc(rng));
    return Poly(F, std::move(c));
}

}  // namespace

TEST_CASE("Carlitz tensor powers") {
    auto F = Field::make(2);
    auto C1 = build_carlitz_tensor(F, 1);
    CHECK(C1->dim() == 1);
    // [t] = theta + tau
    CHECK(C1->t_action().coeff(0)(0, 0) == RatFunc::theta(F));
    CHECK(C1->t_action().coeff(1)(0, 0).is_one());

    auto C2 = build_carlitz_tensor(F, 2);
    CHECK(C2->dim() == 2);
    CHECK(C2->dt()(0, 0) == RatFunc::theta(F));
    CHECK(C2->dt()(0, 1).is_one());
    CHECK(C2->dt()(1, 0).is_zero());
    CHECK(C2->dt()(1, 1) == RatFunc::theta(F));
    CHECK(C2->E()(1, 0).is_one());
    CHECK(C2->E()(0, 0).is_zero());
    CHECK(C2->E()(0, 1).is_zero());
    CHECK(C2->E()(1, 1).is_zero());

    auto C3 = build_carlitz_tensor(F, 3);
    // N has ones on the superdiagonal only; N^3 = 0
    Mat<RatFunc> N3 = C3->N() * C3->N() * C3->N();
    CHECK(N3.is_zero());
    CHECK(!(C3->N() * C3->N()).is_zero());
}

TEST_CASE("G_{s,u} block data") {
    auto F = Field::make(2);
    RatFunc u1 = RatFunc::theta(F), u2 = RatFunc::one(F);
    SUBCASE("s=(2,1): d=(3,1), E[12] bottom entry -u1") {
        auto G = build_G(F, Index({2, 1}), {u1, u2});
        CHECK(G->blocks() == std::vector<int>{3, 1});
        CHECK(G->dim() == 4);
        CHECK(G->wt() == 3);
        // E[11] bottom-left at (row 3, col 1) flat (2,0); E[12] bottom entry at (2,3) = -u1
        CHECK(G->E()(2, 0).is_one());
        CHECK(G->E()(2, 3) == -u1);
        CHECK(G->E()(3, 3).is_one());
        // N: superdiagonal inside the 3-block only
        CHECK(G->N()(0, 1).is_one());
        CHECK(G->N()(1, 2).is_one());
        CHECK(G->N()(2, 3).is_zero());
    }
    SUBCASE("r=1 reduces to the Carlitz tensor power") {
        auto G = build_G(F, Index({3}), {RatFunc::theta(F)});
        auto C = build_carlitz_tensor(F, 3);
        CHECK(G->E() == C->E());
        CHECK(G->dt() == C->dt());
    }
    SUBCASE("s=(1,1), u=(theta,1): blocks (2,1), E[12] bottom entry -theta") {
        // d_1 = s_1 + s_2 = 2, d_2 = 1, so dim 3 (not 2: the blocks are the
        // partial tails of s, not the entries themselves)
        auto G = build_G(F, Index({1, 1}), {u1, u2});
        CHECK(G->blocks() == std::vector<int>{2, 1});
        CHECK(G->dim() == 3);
        CHECK(G->wt() == 2);
        CHECK(G->E()(1, 0).is_one());   // E[11] bottom-left
        CHECK(G->E()(1, 2) == -u1);     // E[12] bottom entry
        CHECK(G->E()(2, 2).is_one());   // E[22]
        CHECK(G->E()(0, 0).is_zero());
    }
}

TEST_CASE("special point v_{s,u}") {
    auto F = Field::make(2);
    RatFunc th = RatFunc::theta(F), one = RatFunc::one(F);
    SUBCASE("s=(2,1), u=(u1,u2) -> (0,0,-u1u2,u2)") {
        auto v = special_point(F, Index({2, 1}), {th, one});
        REQUIRE(v.size() == 4);
        CHECK(v[0].is_zero());
        CHECK(v[1].is_zero());
        CHECK(v[2] == -(th * one));
        CHECK(v[3] == one);
    }
    SUBCASE("r=1: (0,...,0,1)") {
        auto v = special_point(F, Index({4}), {one});
        REQUIRE(v.size() == 4);
        for (int i = 0; i < 3; ++i) CHECK(v[static_cast<size_t>(i)].is_zero());
        CHECK(v[3].is_one());
    }
    SUBCASE("s=(1,1), u=(theta,1) -> (0, -theta, 1): nonzeros at block bottoms") {
        auto v = special_point(F, Index({1, 1}), {th, one});
        REQUIRE(v.size() == 3);
        CHECK(v[0].is_zero());
        CHECK(v[1] == -th);
        CHECK(v[2].is_one());
    }
}

TEST_CASE("t-module axiom: d[a] - a(theta) I is nilpotent; tractable wt row") {
    auto F = Field::make(3);
    auto G = build_G(F, Index({2, 1}), {RatFunc::theta(F), RatFunc::one(F)});
    std::mt19937_64 rng(42);
    for (int it = 0; it < 100; ++it) {
        Poly a = rpoly(F, rng, 4);
        if (a.is_zero()) continue;
        Mat<RatFunc> da = d_act(*G, a);
        // a(theta) as an element of A: substitute t = theta (same coefficients)
        RatFunc atheta(a);
        Mat<RatFunc> diff = da - Mat<RatFunc>::identity(G->dim(), RatFunc::zero(F), RatFunc::one(F)).scaled(atheta);
        Mat<RatFunc> pw = diff;
        for (int i = 1; i < G->dim(); ++i) pw = pw * diff;
        CHECK(pw.is_zero());
        // wt row of d[a] is a(theta) e_wt
        int w = G->wt();
        for (int j = 1; j <= G->dim(); ++j) {
            const RatFunc& e = da(static_cast<size_t>(w - 1), static_cast<size_t>(j - 1));
            if (j == w) CHECK(e == atheta);
            else CHECK(e.is_zero());
        }
    }
}

TEST_CASE("[a][b] = [ab]: the action is a ring homomorphism") {
    std::mt19937_64 rng(7);
    for (auto F : {Field::make(2), Field::make(3)}) {
        auto G = build_G(F, Index({1, 2}), {RatFunc::theta(F), RatFunc::one(F)});
        for (int it = 0; it < 50; ++it) {
            Poly a = rpoly(F, rng, 4), b = rpoly(F, rng, 4);
            TauMatPoly lhs = fqt_action(*G, a) * fqt_action(*G, b);
            TauMatPoly rhs = fqt_action(*G, a * b);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("act: spec examples") {
    SUBCASE("Carlitz [t-1](1) = theta") {
        for (auto F : {Field::make(2), Field::make(3), Field::make(2, 2)}) {
            auto C = build_carlitz_tensor(F, 1);
            Poly tm1(F, {F->neg(1), 1});
            auto y = act(*C, tm1, {RatFunc::one(F)});
            CHECK(y[0] == RatFunc::theta(F));
        }
    }
    SUBCASE("char 2, C^2: [t^2-1]((0,1)) = (0, theta^2)") {
        for (auto F : {Field::make(2), Field::make(2, 2)}) {
            auto C = build_carlitz_tensor(F, 2);
            Poly t2m1(F, {F->neg(1), 0, 1});
            auto y = act(*C, t2m1, {RatFunc::zero(F), RatFunc::one(F)});
            CHECK(y[0].is_zero());
            CHECK(y[1] == RatFunc(Poly(F, {0, 0, 1})));
        }
    }
    SUBCASE("[1](x) = x") {
        auto F = Field::make(3);
        auto C = build_carlitz_tensor(F, 2);
        std::vector<RatFunc> x{RatFunc::theta(F), RatFunc::one(F)};
        CHECK(act(*C, Poly::one(F), x) == x);
    }
    SUBCASE("paper: [t^n-1](1) = (C(n,1) theta, ..., C(n,n-1) theta^{n-1}, theta^n)") {
        auto F = Field::make(2, 2);  // q = 4, char 2
        for (int n : {2, 3, 4}) {
            auto C = build_carlitz_tensor(F, n);
            std::vector<uint16_t> coeffs(static_cast<size_t>(n) + 1, 0);
            coeffs[0] = F->neg(1);
            coeffs[static_cast<size_t>(n)] = 1;
            Poly a(F, coeffs);
            std::vector<RatFunc> e_n(static_cast<size_t>(n), RatFunc::zero(F));
            e_n.back() = RatFunc::one(F);
            auto y = act(*C, a, e_n);
            for (int j = 1; j <= n; ++j) {
                uint16_t bc = binomial_mod_p(static_cast<uint64_t>(n), static_cast<uint64_t>(j), F->p());
                RatFunc expect = RatFunc(Poly::monomial(F, 1, static_cast<size_t>(j))).scaled(bc);
                CHECK(y[static_cast<size_t>(j - 1)] == expect);
            }
        }
    }
}

TEST_CASE("d[t^2] for C^2 is the squared Jordan block") {
    auto F = Field::make(3);
    auto C = build_carlitz_tensor(F, 2);
    Mat<RatFunc> D = d_act(*C, Poly(F, {0, 0, 1}));
    Poly th = Poly::theta(F);
    CHECK(D(0, 0) == RatFunc(th * th));
    CHECK(D(0, 1) == RatFunc(th.scaled(2)));
    CHECK(D(1, 0).is_zero());
    CHECK(D(1, 1) == RatFunc(th * th));
}

TEST_CASE("leading shape (Papanikolas pattern)") {
    auto F = Field::make(2);
    CHECK(leading_shape_check(F, 2, 2).pass);
    CHECK(leading_shape_check(F, 1, 3).pass);
    CHECK(leading_shape_check(F, 3, 4).pass);
    for (int s = 1; s <= 4; ++s)
        for (int m = 1; m <= 8; ++m) CHECK(leading_shape_check(F, s, m).pass);
}

TEST_CASE("congruence [v(t)^s]_s = tau^{deg v} mod v") {
    auto F = Field::make(2);
    CHECK(congruence_check(F, 1, Poly::theta(F)).pass);
    CHECK(congruence_check(F, 2, Poly::theta(F)).pass);
    CHECK(congruence_check(F, 1, Poly(F, {1, 1, 1})).pass);
    CHECK(congruence_check(F, 3, Poly(F, {1, 1})).pass);
    auto F3 = Field::make(3);
    CHECK(congruence_check(F3, 2, Poly(F3, {1, 0, 1})).pass);
}

TEST_CASE("shrinkage of v-adic points under [v(t)^s]") {
    auto F = Field::make(2);
    auto P = std::make_shared<Place>(F, Poly::theta(F));
    SUBCASE("x = theta at s = 1: [t](theta) = theta^2 + theta^2 = 0 in char 2") {
        std::vector<VAdicSeries> x{embed_v(RatFunc::theta(F), P, 30)};
        auto rep = shrinkage_check(F, 1, P, x, 10, 20);
        CHECK(rep.pass);
    }
    SUBCASE("valuation-1 point gains valuation") {
        auto C = build_carlitz_tensor(F, 2);
        std::vector<VAdicSeries> x{embed_v(RatFunc::theta(F), P, 30), embed_v(RatFunc::theta(F), P, 30)};
        std::vector<VAdicSeries> y = act_v(*C, P->v().pow(2), x);
        for (const auto& c : y) {
            if (!c.is_zero_state()) CHECK(c.valuation() >= 2);
        }
        auto rep = shrinkage_check(F, 2, P, x, 10, 60);
        CHECK(rep.pass);
    }
    SUBCASE("zero point") {
        std::vector<VAdicSeries> x{VAdicSeries::zero_to_precision(P, 30)};
        auto rep = shrinkage_check(F, 1, P, x, 10, 20);
        CHECK(rep.pass);
    }
}
