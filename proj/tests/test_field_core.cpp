#include <catch2/catch_amalgamated.hpp>

#include "testutil.hpp"

using namespace pillai;
using testutil::pl;
using testutil::rf;
using testutil::thrown_kind;

TEST_CASE("rational functions reduce to canonical form") {
    CHECK(RatFunc(pl("x^2 - 1"), pl("x - 1")) == rf("x + 1"));
    CHECK(RatFunc(pl("x"), pl("1")) == rf("x"));
    CHECK(RatFunc(pl("2*x"), pl("2")) == rf("x"));

    RatFunc v = RatFunc(pl("3*x + 3"), pl("6*x"));
    CHECK(v.den().is_monic());
    CHECK(Poly::gcd(v.num(), v.den()).is_constant());

    CHECK(thrown_kind([] { RatFunc(pl("x"), Poly()); }) == ErrorKind::ZeroDenominator);
}

TEST_CASE("polynomial gcd is monic and exact") {
    CHECK(Poly::gcd(pl("x^2 - 1"), pl("x^2 - 2*x + 1")) == pl("x - 1"));
    CHECK(Poly::gcd(pl("x"), pl("1")) == pl("1"));
    CHECK(Poly::gcd(pl("x^3"), pl("x^2")) == pl("x^2"));
    CHECK(thrown_kind([] { Poly::gcd(Poly(), Poly()); }) == ErrorKind::BothZero);
}

TEST_CASE("squarefree part counts distinct roots") {
    CHECK(pl("x^3").squarefree_part() == pl("x"));
    CHECK(pl("x").squarefree_part() == pl("x"));
    CHECK(pl("x^2 - 2*x + 1").squarefree_part() == pl("x - 1"));
    CHECK(thrown_kind([] { Poly().squarefree_part(); }) == ErrorKind::ZeroInput);
}

TEST_CASE("powers") {
    CHECK(rf("x").pow(-2) == rf("1/x^2"));
    CHECK(rf("x + 1").pow(3) == rf("x^3 + 3*x^2 + 3*x + 1"));
    CHECK(rf("(x - 1)/(x + 2)").pow(0) == rf("1"));
    CHECK(RatFunc().pow(0) == rf("1"));
    CHECK(thrown_kind([] { RatFunc().pow(-1); }) == ErrorKind::ZeroToNegativePower);
}

TEST_CASE("division identities on random inputs") {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 100; ++i) {
        RatFunc f = testutil::random_ratfunc(rng, 4, 9);
        RatFunc g = testutil::random_ratfunc(rng, 4, 9);
        if (f.is_zero() || g.is_zero()) continue;
        CHECK(f * (g / f) == g);
    }
    CHECK(thrown_kind([] { return rf("x") / RatFunc(); }) == ErrorKind::DivisionByZero);
}

TEST_CASE("equality is canonical component comparison") {
    std::mt19937_64 rng(102);
    for (int i = 0; i < 100; ++i) {
        RatFunc f = testutil::random_ratfunc(rng, 4, 9);
        Rational c = testutil::random_rational(rng, 9, true);
        RatFunc scaled(f.num() * c, f.den() * c);
        CHECK(scaled == f);
        CHECK(scaled.num() == f.num());
        CHECK(scaled.den() == f.den());
    }
}

TEST_CASE("squarefree part is multiplicative over coprime factors") {
    std::mt19937_64 rng(103);
    int done = 0;
    while (done < 60) {
        Poly p = testutil::random_poly(rng, 4, 5, true);
        Poly q = testutil::random_poly(rng, 4, 5, true);
        if (p.is_constant() || q.is_constant()) continue;
        if (!Poly::gcd(p, q).is_constant()) continue;
        CHECK((p * q).squarefree_part() == p.squarefree_part() * q.squarefree_part());
        ++done;
    }
}

TEST_CASE("gcd is associative and commutative on random triples") {
    std::mt19937_64 rng(104);
    for (int i = 0; i < 60; ++i) {
        Poly a = testutil::random_poly(rng, 4, 5, true);
        Poly b = testutil::random_poly(rng, 4, 5, true);
        Poly c = testutil::random_poly(rng, 4, 5, true);
        CHECK(Poly::gcd(a, b) == Poly::gcd(b, a));
        CHECK(Poly::gcd(Poly::gcd(a, b), c) == Poly::gcd(a, Poly::gcd(b, c)));
    }
}

TEST_CASE("division with remainder reconstructs the dividend") {
    std::mt19937_64 rng(105);
    for (int i = 0; i < 100; ++i) {
        Poly a = testutil::random_poly(rng, 6, 9, false);
        Poly b = testutil::random_poly(rng, 3, 9, true);
        auto [q, r] = Poly::divrem(a, b);
        CHECK(q * b + r == a);
        CHECK((r.is_zero() || r.degree() < b.degree()));
    }
}

TEST_CASE("polynomial composition with rational functions") {
    CHECK(compose(pl("x^2 + 1"), rf("x + 1")) == rf("x^2 + 2*x + 2"));
    CHECK(compose(pl("3"), rf("1/x")) == rf("3"));
}
