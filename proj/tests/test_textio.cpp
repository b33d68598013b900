#include "doctest.h"

#include "fqmzv/textio.hpp"

using namespace fqmzv;

TEST_CASE("polynomial grammar round trips") {
    auto F2 = Field::make(2);
    CHECK(parse_poly(F2, "T^2 + T + 1") == Poly(F2, {1, 1, 1}));
    CHECK(parse_poly(F2, "  T^2+T+1 ") == Poly(F2, {1, 1, 1}));
    CHECK(parse_poly(F2, "0") == Poly::zero(F2));
    CHECK(poly_to_string(Poly(F2, {1, 0, 1})) == "T^2 + 1");
    auto F3 = Field::make(3);
    CHECK(parse_poly(F3, "2*T^2 + 1") == Poly(F3, {1, 0, 2}));
    CHECK(parse_poly(F3, "T - 1") == Poly(F3, {2, 1}));
    // extension coefficients in g
    auto F4 = Field::make(2, 2);
    Poly p = parse_poly(F4, "(g+1)*T^2 + g*T + 1");
    CHECK(p.coeff(2) == F4->add(F4->gen(), 1));
    CHECK(p.coeff(1) == F4->gen());
    CHECK(p.coeff(0) == 1);
    CHECK(parse_poly(F4, poly_to_string(p)) == p);
}

TEST_CASE("rational expressions and error positions") {
    auto F = Field::make(2);
    RatFunc x = parse_ratfunc(F, "1/(T+1)");
    CHECK(x == RatFunc(Poly::one(F), Poly(F, {1, 1})));
    CHECK(parse_ratfunc(F, "(T^2+T)/(T+1)") == RatFunc::theta(F));
    CHECK_THROWS_AS((void)parse_ratfunc(F, "T+"), ParseError);
    CHECK_THROWS_AS((void)parse_ratfunc(F, "w"), ParseError);
    CHECK_THROWS_AS((void)parse_poly(F, "1/T"), ParseError);
    CHECK_THROWS_AS((void)parse_ratfunc(F, "g"), ParseError);  // no generator in a prime field
}

TEST_CASE("index and vector literals") {
    CHECK(parse_index("[2,1]") == Index({2, 1}));
    CHECK(parse_index("[ 3 ]") == Index({3}));
    CHECK_THROWS_AS((void)parse_index("[]"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_index("[0]"), std::invalid_argument);
    auto F = Field::make(2);
    auto v = parse_vector(F, "[T, 1/(T+1), 0]");
    REQUIRE(v.size() == 3);
    CHECK(v[0] == RatFunc::theta(F));
    CHECK(v[2].is_zero());
}

TEST_CASE("word and element literals") {
    auto F = Field::make(2);
    auto P = std::make_shared<Place>(F, Poly::theta(F));
    EvalContext ctx(F, P);
    StuffleAlgebra alg(ctx);
    Word w = parse_word(alg, "z[1,T]z[2,T+1]");
    REQUIRE(w.size() == 2);
    CHECK(w[0].s == 1);
    CHECK(w[0].u == RatFunc::theta(F));
    CHECK(w[1].s == 2);
    CHECK(parse_word(alg, "1").empty());
    CHECK(word_to_string(w) == "z[1,T]z[2,T + 1]");
    StuffleElement e = parse_element(alg, "z[1,T] + T*z[2,1]");
    REQUIRE(e.size() == 2);
    CHECK(e.at(parse_word(alg, "z[2,1]")) == RatFunc::theta(F));
    StuffleElement neg = parse_element(alg, "-z[1,T]");
    CHECK(neg.at(parse_word(alg, "z[1,T]")) == -RatFunc::one(F));
}

TEST_CASE("series rendering carries the O(...) precision tag") {
    auto F = Field::make(2);
    InfSeries s = embed_inf(RatFunc(Poly::one(F), Poly(F, {1, 1})), 3);
    CHECK(inf_series_to_string(s) == "T^-1 + T^-2 + T^-3 + O(T^-4)");
    InfSeries z = InfSeries::zero_to_precision(F, 5);
    CHECK(inf_series_to_string(z) == "O(T^-6)");
    auto P = std::make_shared<Place>(F, Poly::theta(F));
    VAdicSeries t = embed_v(RatFunc(Poly::one(F), Poly(F, {1, 1})), P, 2);
    CHECK(vadic_series_to_string(t) == "1 + v^1 + v^2 + O(v^3)");
}

TEST_CASE("certificate JSON round trip and field check") {
    auto F = Field::make(2);
    auto P = std::make_shared<Place>(F, Poly::theta(F));
    EvalContext ctx(F, P);
    Certificate c;
    c.target = Index({1, 1});
    c.terms.push_back(CertTerm{-RatFunc::one(F), Index({1, 1}), {Poly::one(F), Poly::one(F)}});
    c.terms.push_back(CertTerm{-RatFunc::one(F), Index({2}), {Poly::one(F)}});
    c.provenance = "test";
    std::string json = certificate_to_json(F, c);
    Certificate back = certificate_from_json(F, json);
    CHECK(back.target == c.target);
    REQUIRE(back.terms.size() == 2);
    CHECK(back.terms[0].b == c.terms[0].b);
    CHECK(back.terms[0].index == c.terms[0].index);
    CHECK(back.terms[1].u[0] == c.terms[1].u[0]);
    // wrong field refused
    auto F3 = Field::make(3);
    CHECK_THROWS_AS((void)certificate_from_json(F3, json), std::invalid_argument);
    // spec-shaped document parses
    std::string doc = R"json({"q":{"p":2,"e":1},"index":[2,1],
        "terms":[{"b":"1/(T+1)","index":[2,1],"u":["T","1"]}],"provenance":"x"})json";
    Certificate d = certificate_from_json(F, doc);
    CHECK(d.target == Index({2, 1}));
    CHECK(d.terms[0].b == RatFunc(Poly::one(F), Poly(F, {1, 1})));
}
