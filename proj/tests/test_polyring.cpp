#include <doctest.h>

#include "quadcx/gen.hpp"
#include "quadcx/polyring.hpp"

using namespace quadcx;

namespace {

MPoly X(int n, int i) { return MPoly::var(n, i); }
MPoly one(int n) { return MPoly::constant(n, 1); }

MPoly random_poly(Gen& g, int n, int maxdeg, int nterms) {
    MPoly p(n);
    for (int t = 0; t < nterms; ++t) {
        Exps e(n);
        int budget = g.uniform(0, maxdeg);
        for (int k = 0; k < budget; ++k) e[g.uniform(0, n - 1)]++;
        p.add_term(e, g.small_rat());
    }
    return p;
}

}  // namespace

TEST_CASE("buchberger examples") {
    int n = 2;
    auto gb = buchberger(Ideal{n, {X(n, 0)}});
    REQUIRE(gb.basis.size() == 1);
    CHECK(gb.basis[0] == X(n, 0));

    // X1^2 and X1 X2 - X1: the S-polynomial reduces to zero, so the basis is the input
    auto gb2 = buchberger(Ideal{n, {X(n, 0) * X(n, 0), X(n, 0) * X(n, 1) - X(n, 0)}});
    REQUIRE(gb2.basis.size() == 2);
    CHECK(gb2.basis[0] == X(n, 0) * X(n, 1) - X(n, 0));
    CHECK(gb2.basis[1] == X(n, 0) * X(n, 0));

    auto unit = buchberger(Ideal{n, {X(n, 0), one(n) - X(n, 0)}});
    REQUIRE(unit.basis.size() == 1);
    CHECK(unit.basis[0] == one(n));

    CHECK(buchberger(Ideal{n, {}}).basis.empty());
}

TEST_CASE("ideal membership examples") {
    int n = 2;
    auto gb = buchberger(Ideal{n, {X(n, 0)}});
    CHECK(ideal_member(MPoly(n), gb));
    CHECK(ideal_member(X(n, 0) * X(n, 1), gb));
    CHECK_FALSE(ideal_member(X(n, 1), gb));
}

TEST_CASE("intersection and equality examples") {
    int n = 2;
    Ideal i{n, {X(n, 0)}}, j{n, {X(n, 1)}};
    CHECK(ideals_equal(ideal_intersect(i, i), i));
    Ideal ij = ideal_intersect(i, j);
    CHECK(ideals_equal(ij, Ideal{n, {X(n, 0) * X(n, 1)}}));
    // containment both ways through membership
    auto gij = buchberger(ij);
    CHECK(ideal_member(X(n, 0) * X(n, 1), gij));
    for (auto& p : gij.basis) {
        CHECK(ideal_member(p, buchberger(i)));
        CHECK(ideal_member(p, buchberger(j)));
    }
    CHECK(ideals_equal(ideal_intersect(i, unit_ideal(n)), i));

    CHECK(ideals_equal(Ideal{n, {X(n, 0), X(n, 1)}}, Ideal{n, {X(n, 1), X(n, 0)}}));
    CHECK_FALSE(ideals_equal(Ideal{n, {X(n, 0)}}, Ideal{n, {X(n, 0) * X(n, 0)}}));
    CHECK(ideals_equal(Ideal{n, {X(n, 0) + X(n, 1), X(n, 1)}}, Ideal{n, {X(n, 0), X(n, 1)}}));
}

TEST_CASE("reduced bases are fixed points and contain random combinations") {
    Gen g(21);
    for (int trial = 0; trial < 20; ++trial) {
        int n = g.uniform(1, 3);
        Ideal i{n, {}};
        int ng = g.uniform(1, 3);
        for (int k = 0; k < ng; ++k) {
            MPoly p = random_poly(g, n, 2, 3);
            if (!p.is_zero()) i.gens.push_back(p);
        }
        auto gb = buchberger(i);
        auto again = buchberger(Ideal{n, gb.basis});
        CHECK(gb_equal(gb, again));
        MPoly f(n);
        for (auto& p : i.gens) f += random_poly(g, n, 2, 2) * p;
        CHECK(ideal_member(f, gb));
    }
}

TEST_CASE("ideal lemma anchored cases") {
    CHECK(verify_ideal_lemma(3, 1, {}));
    CHECK(verify_ideal_lemma(3, 1, {{0, 1, 2, 3}}));
    CHECK(verify_ideal_lemma(2, 1, {{0}, {1}}));
}

TEST_CASE("ideal lemma with X0 substituted, two sides computed by hand") {
    // N=2, n=1, J={{0},{1}}: left (X2) + (X0) ∩ (X1); right ((X0, X2)) ∩ ((X1, X2))
    int N = 2;
    MPoly x0 = simplex_coord(N, 0);
    CHECK(x0 == one(N) - X(N, 0) - X(N, 1));
    Ideal left = ideal_sum(Ideal{N, {X(N, 1)}}, ideal_intersect(Ideal{N, {x0}}, Ideal{N, {X(N, 0)}}));
    Ideal right = ideal_intersect(Ideal{N, {x0, X(N, 1)}}, Ideal{N, {X(N, 0), X(N, 1)}});
    // both equal (X2, X1^2 - X1)
    Ideal expect{N, {X(N, 1), X(N, 0) * X(N, 0) - X(N, 0)}};
    CHECK(ideals_equal(left, expect));
    CHECK(ideals_equal(right, expect));
}

TEST_CASE("ideal lemma random instances") {
    Gen g(22);
    for (int trial = 0; trial < 15; ++trial) {
        int N = g.uniform(1, 4), n = g.uniform(0, N);
        std::vector<std::vector<int>> J;
        int nj = g.uniform(0, 3);
        for (int k = 0; k < nj; ++k) {
            std::vector<int> s;
            for (int v = 0; v <= N; ++v)
                if (g.uniform(0, 1)) s.push_back(v);
            J.push_back(s);
        }
        CHECK(verify_ideal_lemma(N, n, J));
    }
}

TEST_CASE("invalid subset indices are rejected") {
    CHECK_THROWS_AS(verify_ideal_lemma(2, 1, {{3}}), Error);
}
