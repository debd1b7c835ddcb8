#include <catch2/catch_amalgamated.hpp>

#include "testutil.hpp"

using namespace pillai;
using testutil::pl;
using testutil::rf;
using testutil::thrown_kind;

namespace {

bool has_cluster(const PlaceBasis& basis, const Poly& p) {
    for (const Poly& c : basis.clusters()) {
        if (c == p) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("gcd-free basis splits shared factors") {
    PlaceBasis basis = gcd_free_basis({rf("x^2"), rf("x^2 - x")});
    REQUIRE(basis.cluster_count() == 2);
    CHECK(has_cluster(basis, pl("x")));
    CHECK(has_cluster(basis, pl("x - 1")));
    CHECK(basis.includes_infinity());

    PlaceBasis single = gcd_free_basis({rf("x")});
    REQUIRE(single.cluster_count() == 1);
    CHECK(has_cluster(single, pl("x")));
    CHECK(single.includes_infinity());

    PlaceBasis three = gcd_free_basis({rf("x"), rf("x + 1"), rf("x^2 - x - 1")});
    REQUIRE(three.cluster_count() == 3);
    CHECK(has_cluster(three, pl("x^2 - x - 1")));

    CHECK(thrown_kind([] { gcd_free_basis({RatFunc()}); }) == ErrorKind::ZeroElement);
}

TEST_CASE("gcd-free basis handles non-squarefree overlap") {
    // x^2 (x+1)^3 alone forces the refinement to split its squarefree part.
    PlaceBasis basis = gcd_free_basis({rf("x^2 * (x + 1)^3")});
    REQUIRE(basis.cluster_count() == 2);
    CHECK(has_cluster(basis, pl("x")));
    CHECK(has_cluster(basis, pl("x + 1")));
}

TEST_CASE("gcd-free basis refines deeply nested shared factors") {
    PlaceBasis basis = gcd_free_basis({rf("x^6*(x + 1)^4"), rf("x^4*(x + 1)^6"), rf("(x^2 + x)^3"),
                                       rf("(x^3 - x)^2")});
    REQUIRE(basis.cluster_count() == 3);
    CHECK(has_cluster(basis, pl("x")));
    CHECK(has_cluster(basis, pl("x + 1")));
    CHECK(has_cluster(basis, pl("x - 1")));

    // Every input decomposes exactly: full divisor computation must succeed
    // and satisfy the sum formula.
    for (const char* text : {"x^6*(x + 1)^4", "x^4*(x + 1)^6", "(x^2 + x)^3", "(x^3 - x)^2"}) {
        CHECK(divisor(rf(text), basis).weighted_sum() == 0);
    }
}

TEST_CASE("gcd-free basis is idempotent on its own clusters") {
    std::mt19937_64 rng(201);
    for (int i = 0; i < 40; ++i) {
        std::vector<RatFunc> elements;
        for (int k = 0; k < 3; ++k) elements.push_back(testutil::random_ratfunc(rng, 4, 6));
        PlaceBasis basis = gcd_free_basis(elements);
        std::vector<RatFunc> clusters;
        for (const Poly& c : basis.clusters()) clusters.push_back(RatFunc(c));
        if (clusters.empty()) continue;
        PlaceBasis again = gcd_free_basis(clusters);
        CHECK(again.clusters() == basis.clusters());
    }
}

TEST_CASE("valuations read exponents and degree gaps") {
    RatFunc f = rf("x^2/(x + 1)");
    PlaceBasis basis = gcd_free_basis({f});
    CHECK(valuation(f, Place::infinity(), basis) == -1);

    std::size_t x_index = basis.clusters()[0] == pl("x") ? 0 : 1;
    CHECK(valuation(f, Place::finite(x_index), basis) == 2);
    CHECK(valuation(f, Place::finite(1 - x_index), basis) == -1);

    RatFunc constant = rf("5");
    for (const Place& p : basis.places()) CHECK(valuation(constant, p, basis) == 0);

    PlaceBasis coarse = gcd_free_basis({rf("x^2 + x")});
    CHECK(thrown_kind([&] { valuation(rf("x"), Place::finite(0), coarse); }) ==
          ErrorKind::NotExpressible);
}

TEST_CASE("divisors satisfy the weighted sum formula") {
    RatFunc f = rf("x^2/(x + 1)");
    PlaceBasis basis = gcd_free_basis({f});
    Divisor d = divisor(f, basis);
    CHECK(d.weighted_sum() == 0);
    CHECK(d.infinity_value() == -1);

    Divisor dx = divisor(rf("x"), gcd_free_basis({rf("x")}));
    CHECK(dx.finite_values() == std::vector<long>{1});
    CHECK(dx.infinity_value() == -1);

    RatFunc g = rf("(x - 1)/x");
    Divisor dg = divisor(g, gcd_free_basis({g}));
    CHECK(dg.infinity_value() == 0);
    CHECK(dg.weighted_sum() == 0);

    std::mt19937_64 rng(202);
    for (int i = 0; i < 100; ++i) {
        RatFunc h = testutil::random_ratfunc(rng, 5, 9);
        if (h.is_zero()) continue;
        CHECK(divisor(h, gcd_free_basis({h})).weighted_sum() == 0);
    }
}

TEST_CASE("height examples") {
    CHECK(height(rf("x^2/(x + 1)")) == Height::of(2));
    CHECK(height(rf("5")) == Height::of(0));
    CHECK(height(rf("x^3")) == Height::of(3));
    CHECK(height(RatFunc()).is_infinite());
    CHECK(height_via_divisor(RatFunc()).is_infinite());
}

TEST_CASE("height via divisor equals the degree formula") {
    std::mt19937_64 rng(203);
    for (int i = 0; i < 150; ++i) {
        RatFunc f = testutil::random_ratfunc(rng, 6, 20);
        if (f.is_zero()) continue;
        Height direct = height(f);
        CHECK(direct == height_via_divisor(f));
        CHECK(direct.value() == std::max(f.num().degree(), f.den().degree()));
    }
}

TEST_CASE("height laws") {
    std::mt19937_64 rng(204);
    std::uniform_int_distribution<long> exponent(-3, 3);
    for (int i = 0; i < 200; ++i) {
        RatFunc f = testutil::random_ratfunc(rng, 5, 12);
        RatFunc g = testutil::random_ratfunc(rng, 5, 12);
        if (f.is_zero() || g.is_zero()) continue;
        long hf = finite_height(f);
        long hg = finite_height(g);

        CHECK(hf >= 0);
        CHECK(finite_height(f.inverse()) == hf);

        RatFunc sum = f + g;
        if (!sum.is_zero()) {
            long hs = finite_height(sum);
            CHECK(hs <= hf + hg);
            CHECK(hs >= hf - hg);
        }
        RatFunc prod = f * g;
        if (!prod.is_zero()) {
            long hp = finite_height(prod);
            CHECK(hp <= hf + hg);
            CHECK(hp >= hf - hg);
        }

        long n = exponent(rng);
        CHECK(finite_height(f.pow(n)) == std::labs(n) * hf);

        CHECK((hf == 0) == f.is_constant());
    }
}

TEST_CASE("height of polynomial substitution scales by degree") {
    std::mt19937_64 rng(205);
    int done = 0;
    while (done < 60) {
        RatFunc f = testutil::random_ratfunc(rng, 4, 9);
        if (f.is_zero() || f.is_constant()) continue;
        Poly a = testutil::random_poly(rng, 3, 9, true);
        RatFunc composed = compose(a, f);
        REQUIRE(!composed.is_zero());
        CHECK(finite_height(composed) == a.degree() * finite_height(f));
        ++done;
    }
}

TEST_CASE("minimal S-set size") {
    CHECK(s_set_size({rf("x"), rf("x + 1"), rf("x^2 - x - 1")}) == 5);
    CHECK(s_set_size({rf("x")}) == 2);
    CHECK(s_set_size({rf("x^2"), rf("x")}) == 2);
    CHECK(thrown_kind([] { s_set_size({rf("5"), rf("7")}); }) == ErrorKind::AllConstant);
}

TEST_CASE("S-unit membership") {
    SUnitSpec from_x = SUnitSpec::from_elements({rf("x")});
    CHECK(is_s_unit(rf("x"), from_x));
    CHECK_FALSE(is_s_unit(rf("x + 1"), from_x));

    SUnitSpec pair = SUnitSpec::from_elements({rf("x"), rf("x - 1")});
    CHECK(is_s_unit(rf("x^2/(x - 1)"), pair));
    CHECK(pair.cardinality == 3);
}
