#include "doctest.h"

#include <random>

#include "fqmzv/logexp.hpp"

using namespace fqmzv;

namespace {

Mat<RatFunc> frob_mat(const Mat<RatFunc>& A, unsigned n) {
    return A.map([&](const RatFunc& x) { return x.frobenius(n); });
}

// log functional equation at order i: P_i (theta^{q^i} I + N) + P_{i-1} E^{(i-1)} = (theta I + N) P_i
void check_log_feq(LogCoeffs& L, int imax) {
    const TModule& G = *L.module();
    const FieldPtr& F = G.field();
    Mat<RatFunc> I = Mat<RatFunc>::identity(G.dim(), RatFunc::zero(F), RatFunc::one(F));
    for (int i = 1; i <= imax; ++i) {
        RatFunc thqi(Poly::monomial(F, 1, 1).frobenius(static_cast<unsigned>(i)));
        Mat<RatFunc> lhs = L.matrix(i) * (I.scaled(thqi) + G.N()) + L.matrix(i - 1) * frob_mat(G.E(), static_cast<unsigned>(i - 1));
        Mat<RatFunc> rhs = (I.scaled(RatFunc::theta(F)) + G.N()) * L.matrix(i);
        CHECK(lhs == rhs);
    }
}

void check_exp_feq(ExpCoeffs& E, int imax) {
    const TModule& G = *E.module();
    const FieldPtr& F = G.field();
    Mat<RatFunc> I = Mat<RatFunc>::identity(G.dim(), RatFunc::zero(F), RatFunc::one(F));
    for (int i = 1; i <= imax; ++i) {
        RatFunc thqi(Poly::monomial(F, 1, 1).frobenius(static_cast<unsigned>(i)));
        Mat<RatFunc> lhs = E.matrix(i) * (I.scaled(thqi) + G.N());
        Mat<RatFunc> rhs = (I.scaled(RatFunc::theta(F)) + G.N()) * E.matrix(i) + G.E() * frob_mat(E.matrix(i - 1), 1);
        CHECK(lhs == rhs);
    }
}

}  // namespace

TEST_CASE("Carlitz log coefficients are 1/L_i; exp are inverse Carlitz factorials") {
    for (auto F : {Field::make(2), Field::make(3)}) {
        auto C = build_carlitz_tensor(F, 1);
        LogCoeffs L(C);
        for (int i = 0; i <= 4; ++i) {
            CHECK(L.matrix(i)(0, 0) == RatFunc(Poly::one(F), L_factorial(F, static_cast<unsigned>(i))));
        }
        ExpCoeffs E(C);
        CHECK(E.matrix(0)(0, 0).is_one());
        // Q_1 = 1/(theta^q - theta)
        CHECK(E.matrix(1)(0, 0) == RatFunc(Poly::one(F), -L_factor(F, 1)));
        // Q_i (theta^{q^i} - theta) = Q_{i-1}^{(1)}
        for (int i = 1; i <= 4; ++i) {
            RatFunc lhs = E.matrix(i)(0, 0) * RatFunc(-L_factor(F, static_cast<unsigned>(i)));
            CHECK(lhs == E.matrix(i - 1)(0, 0).frobenius(1));
        }
    }
}

TEST_CASE("C^2: wt row of P_i is ((theta - theta^{q^i})/L_i^2, 1/L_i^2)") {
    auto F = Field::make(2);
    auto C = build_carlitz_tensor(F, 2);
    LogCoeffs L(C);
    for (int i = 1; i <= 4; ++i) {
        RatFunc Li2 = RatFunc(L_factorial(F, static_cast<unsigned>(i))).pow(2);
        CHECK(L.matrix(i)(1, 0) == RatFunc(L_factor(F, static_cast<unsigned>(i))) / Li2);
        CHECK(L.matrix(i)(1, 1) == RatFunc::one(F) / Li2);
    }
    CHECK(L.matrix(0) == Mat<RatFunc>::identity(2, RatFunc::zero(F), RatFunc::one(F)));
}

TEST_CASE("functional equations hold exactly; sweep equals resolvent") {
    std::mt19937_64 rng(5);
    for (auto F : {Field::make(2), Field::make(3)}) {
        RatFunc th = RatFunc::theta(F), one = RatFunc::one(F);
        for (const Index& s : {Index({2, 1}), Index({1, 1, 1}), Index({3})}) {
            std::vector<RatFunc> u(static_cast<size_t>(s.dep()), one);
            u[0] = th;
            auto G = build_G(F, s, u);
            LogCoeffs L(G);
            check_log_feq(L, 3);
            ExpCoeffs E(G);
            check_exp_feq(E, 3);
            // composition = identity mod tau^{I+1}
            int I = 3;
            TauMatPoly comp = TauMatPoly::mul_truncated(exp_operator(E, I), log_operator(L, I), static_cast<size_t>(I));
            TauMatPoly id = TauMatPoly::identity(F, static_cast<size_t>(G->dim()));
            CHECK(comp == id);
            // sweep == nilpotent resolvent on the step-3 data
            Mat<RatFunc> B = L.matrix(2) * G->E().map([](const RatFunc& x) { return x.frobenius(2); });
            RatFunc c3(L_factor(F, 3));
            CHECK(solve_sylvester(*G, c3, B) == solve_sylvester_resolvent(*G, c3, B));
        }
    }
}

TEST_CASE("wt_row_oracle: closed form equals the recursion row") {
    auto F = Field::make(2);
    RatFunc th = RatFunc::theta(F), one = RatFunc::one(F), th1 = RatFunc(Poly(F, {1, 1}));
    for (const Index& s : {Index({1}), Index({2, 1}), Index({1, 1}), Index({1, 2, 1})}) {
        for (const RatFunc& u1 : {one, th, th1}) {
            std::vector<RatFunc> u(static_cast<size_t>(s.dep()), u1);
            auto G = build_G(F, s, u);
            LogCoeffs L(G);
            for (int i = 0; i <= 5; ++i) {
                auto oracle = wt_row_oracle(*G, i);
                CHECK(oracle == L.wt_row(i));
                // and the row path agrees with the full-matrix recursion
                const Mat<RatFunc>& Pi = L.matrix(i);
                for (int b = 0; b < G->dim(); ++b)
                    CHECK(Pi(static_cast<size_t>(G->wt() - 1), static_cast<size_t>(b)) == oracle[static_cast<size_t>(b)]);
            }
        }
    }
    SUBCASE("hand value: s=(1,1), u=(theta,.), i=1, block m=2, j=1: y = -theta/L_1") {
        auto G = build_G(F, Index({1, 1}), {th, one});
        auto row = wt_row_oracle(*G, 1);
        CHECK(row[static_cast<size_t>(G->pos(2, 1) - 1)] == -(th / RatFunc(L_factorial(F, 1))));
    }
}

TEST_CASE("eval_log: spec cross-checks") {
    auto F = Field::make(2);
    SUBCASE("v-adic, Carlitz at x = theta: sum theta^{q^i}/L_i") {
        auto P = std::make_shared<Place>(F, Poly::theta(F));
        auto C = build_carlitz_tensor(F, 1);
        LogCoeffs L(C);
        long long M = 20;
        auto res = eval_log_v(L, {RatFunc::theta(F)}, P, M);
        // independent direct sum with generous index range
        VAdicSeries direct = VAdicSeries::zero_to_precision(P, M);
        for (unsigned i = 0; i <= 8; ++i) {
            RatFunc term = RatFunc::theta(F).frobenius(i) / RatFunc(L_factorial(F, i));
            direct += embed_v(term, P, M);
        }
        CHECK(match_through(res.coords[0], direct, M).equal);
        CHECK(match_through(eval_log_v_wt(L, {RatFunc::theta(F)}, P, M), direct, M).equal);
    }
    SUBCASE("x = 0 -> 0") {
        auto C = build_carlitz_tensor(F, 2);
        LogCoeffs L(C);
        auto res = eval_log_inf(L, {RatFunc::zero(F), RatFunc::zero(F)}, 15);
        CHECK(res.coords[0].is_zero_state());
        CHECK(res.coords[1].is_zero_state());
    }
    SUBCASE("inf-adic, C^2 at (0,1): coordinate 2 = sum 1/L_i^2") {
        auto C = build_carlitz_tensor(F, 2);
        LogCoeffs L(C);
        long long N = 25;
        auto res = eval_log_inf(L, {RatFunc::zero(F), RatFunc::one(F)}, N);
        InfSeries direct = InfSeries::zero_to_precision(F, N);
        for (unsigned i = 0; i <= 6; ++i)
            direct += embed_inf(RatFunc::one(F) / RatFunc(L_factorial(F, i)).pow(2), N);
        CHECK(match_through(res.coords[1], direct, N).equal);
        CHECK(match_through(eval_log_inf_wt(L, {RatFunc::zero(F), RatFunc::one(F)}, N), direct, N).equal);
    }
    SUBCASE("domain violations are rejected with the failing comparison") {
        auto C = build_carlitz_tensor(F, 1);
        LogCoeffs L(C);
        // |theta^2|_inf = q^2 = bound q^{q/(q-1)}: strict inequality fails
        CHECK_THROWS_AS((void)eval_log_inf(L, {RatFunc(Poly(F, {0, 0, 1}))}, 10), DomainViolation);
        auto P = std::make_shared<Place>(F, Poly::theta(F));
        CHECK_THROWS_AS((void)eval_log_v(L, {RatFunc::one(F)}, P, 10), DomainViolation);
    }
}

TEST_CASE("eval_log precision claims survive recomputation at +10") {
    auto F = Field::make(2);
    auto P = std::make_shared<Place>(F, Poly::theta(F));
    auto G = build_G(F, Index({2, 1}), {RatFunc::theta(F), RatFunc::one(F)});
    LogCoeffs L(G);
    auto vpt = special_point(F, Index({2, 1}), {RatFunc::theta(F), RatFunc::one(F)});
    SUBCASE("inf") {
        long long N = 20;
        auto a = eval_log_inf(L, vpt, N);
        auto b = eval_log_inf(L, vpt, N + 10);
        for (int i = 0; i < G->dim(); ++i)
            CHECK(match_through(a.coords[static_cast<size_t>(i)], b.coords[static_cast<size_t>(i)], N).equal);
    }
    SUBCASE("v-adic") {
        long long M = 15;
        Poly t3m1(F, {1, 0, 0, 1});  // t^3 - 1 = t^3 + 1, a(t) with d_1 = 3
        Poly t1m1(F, {1, 1});
        Poly a = t3m1 * t1m1;
        auto y = act(*G, a, vpt);
        auto r1 = eval_log_v(L, y, P, M);
        auto r2 = eval_log_v(L, y, P, M + 10);
        for (int i = 0; i < G->dim(); ++i)
            CHECK(match_through(r1.coords[static_cast<size_t>(i)], r2.coords[static_cast<size_t>(i)], M).equal);
    }
}
