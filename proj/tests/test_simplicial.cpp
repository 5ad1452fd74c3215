#include <doctest.h>

#include <algorithm>
#include <map>

#include "quadcx/gen.hpp"
#include "quadcx/simplicial.hpp"
#include "oracles.hpp"

using namespace quadcx;
using oracles::chain_counts;

namespace {

MPoly X(int N, int k) { return simplex_coord(N, k); }

SimplicialSubset random_subset(Gen& g, int N) {
    std::vector<Face> gens;
    int count = g.uniform(1, 4);
    for (int c = 0; c < count; ++c) {
        Face f;
        for (int v = 0; v <= N; ++v)
            if (g.uniform(0, 1)) f.push_back(v);
        if (f.empty()) f.push_back(g.uniform(0, N));
        gens.push_back(f);
    }
    return simplicial_from(N, gens);
}

}  // namespace

TEST_CASE("simplicial subsets") {
    auto K = simplicial_from(2, {{0, 1}, {2}});
    CHECK(K.faces.size() == 4);
    CHECK(is_simplicial_subset(K));
    CHECK(maximal_faces(K) == std::vector<Face>{{0, 1}, {2}});
    SimplicialSubset bad{2, {{0, 1}}};
    CHECK_FALSE(is_simplicial_subset(bad));
    CHECK(face_counts(full_simplex(3)) == std::vector<int>{4, 6, 4, 1});
    CHECK(face_counts(boundary_simplex(3, 3)) == std::vector<int>{4, 6, 4});
    CHECK_THROWS_AS(simplicial_from(2, {{0, 3}}), Error);
}

TEST_CASE("cosimplicial maps") {
    auto id = cosimplicial_map(3, {0, 1, 2, 3});
    CHECK(id.A == Mat::identity(3));
    CHECK(id.t.is_zero());
    auto c = cosimplicial_map(2, {0, 0});
    CHECK(c.A.is_zero());
    CHECK(c.t.is_zero());
    auto face = cosimplicial_map(2, {1, 2});
    CHECK(face.A == Mat{{-1}, {1}});
    CHECK(face.t == Mat{{1}, {0}});
    // x1 = 1/3 -> (2/3, 1/3)
    Mat x(1, 1);
    x(0, 0) = make_rat(1, 3);
    Mat y = apply(face, x);
    CHECK(y(0, 0) == make_rat(2, 3));
    CHECK(y(1, 0) == make_rat(1, 3));
    try {
        cosimplicial_map(2, {1, 0});
        FAIL("expected NotMonotone");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotMonotone);
    }
    // functoriality on random monotone maps [a] -> [b] -> [c]
    Gen g(61);
    for (int trial = 0; trial < 30; ++trial) {
        int a = g.uniform(0, 3), b = g.uniform(0, 3), cc = g.uniform(0, 3);
        std::vector<int> phi(a + 1), psi(b + 1);
        for (auto& v : phi) v = g.uniform(0, b);
        for (auto& v : psi) v = g.uniform(0, cc);
        std::sort(phi.begin(), phi.end());
        std::sort(psi.begin(), psi.end());
        std::vector<int> comp;
        for (int v : phi) comp.push_back(psi[v]);
        auto lhs = compose(cosimplicial_map(cc, psi), cosimplicial_map(b, phi));
        auto rhs = cosimplicial_map(cc, comp);
        CHECK(lhs.A == rhs.A);
        CHECK(lhs.t == rhs.t);
    }
}

TEST_CASE("realization ideals") {
    auto full = realization_ideal(full_simplex(3));
    CHECK(full.basis.empty());

    auto two = realization_ideal(simplicial_from(1, {{0}, {1}}));
    MPoly x = MPoly::var(1, 0);
    CHECK(gb_equal(two, buchberger(Ideal{1, {x * x - x}})));

    // boundary of Delta^n in Delta^N against the lemma's form
    for (int N = 1; N <= 3; ++N)
        for (int n = 1; n <= N; ++n) {
            auto gb = realization_ideal(boundary_simplex(n, N));
            std::vector<Ideal> fam;
            Ideal tail{N, {}};
            for (int j = n + 1; j <= N; ++j) tail.gens.push_back(X(N, j));
            for (int i = 0; i <= n; ++i) {
                Ideal a = tail;
                a.gens.push_back(X(N, i));
                fam.push_back(a);
            }
            CHECK(gb_equal(gb, buchberger(intersect_all(N, fam))));
            std::vector<Ideal> single;
            for (int i = 0; i <= n; ++i) single.push_back(Ideal{N, {X(N, i)}});
            CHECK(gb_equal(gb, buchberger(ideal_sum(tail, intersect_all(N, single)))));
        }
    // the boundary of the triangle vanishes exactly on the three edges
    auto bd = realization_ideal(boundary_simplex(2, 2));
    MPoly x1 = MPoly::var(2, 0), x2 = MPoly::var(2, 1);
    CHECK(ideal_member(x1 * x2 * X(2, 0), bd));
    CHECK_FALSE(ideal_member(x1 * x2, bd));
    CHECK(bd.basis.size() == 1);
}

TEST_CASE("pushout ideals") {
    CHECK(verify_pushout_ideal(full_simplex(2), {0, 1, 2}));
    auto K = boundary_simplex(2, 2);
    K.faces.insert({0, 1, 2});
    CHECK(verify_pushout_ideal(K, {0, 1, 2}));
    CHECK(verify_pushout_ideal(simplicial_from(0, {{0}}), {0}));
    CHECK(verify_pushout_ideal(simplicial_from(3, {{0, 1}, {1, 2, 3}, {0, 3}}), {1, 2, 3}));
    CHECK_THROWS_AS(verify_pushout_ideal(full_simplex(2), {0, 1}), Error);

    Gen g(62);
    for (int trial = 0; trial < 12; ++trial) {
        int N = g.uniform(1, trial < 8 ? 3 : 4);
        auto R = random_subset(g, N);
        for (auto& x : maximal_faces(R)) CHECK(verify_pushout_ideal(R, x));
    }
}

TEST_CASE("face indexing") {
    for (int N = 0; N <= 4; ++N) {
        int total = (1 << (N + 1)) - 1;
        Face prev;
        for (int i = 0; i < total; ++i) {
            Face f = face_at(N, i);
            CHECK(face_index(N, f) == i);
            if (i) CHECK((prev.size() < f.size() || (prev.size() == f.size() && prev < f)));
            prev = f;
        }
    }
    CHECK(face_index(2, {0}) == 0);
    CHECK(face_index(2, {0, 1}) == 3);
    CHECK(face_index(2, {0, 1, 2}) == 6);
}

TEST_CASE("barycentric subdivision") {
    CHECK(subdivide(full_simplex(0)) == full_simplex(0));
    auto s1 = subdivide(full_simplex(1));
    CHECK(s1.N == 2);
    CHECK(face_counts(s1) == std::vector<int>{3, 2});
    // vertices {0},{1},{0,1} -> 0,1,2; edges join the barycenter
    CHECK(maximal_faces(s1) == std::vector<Face>{{0, 2}, {1, 2}});
    auto s2 = subdivide(full_simplex(2));
    CHECK(s2.N == 6);
    CHECK(face_counts(s2) == std::vector<int>{7, 12, 6});
    CHECK(is_simplicial_subset(s2));

    Gen g(63);
    for (int trial = 0; trial < 20; ++trial) {
        int N = g.uniform(0, 4);
        auto K = random_subset(g, N);
        auto S = subdivide(K);
        CHECK(is_simplicial_subset(S));
        CHECK(face_counts(S) == chain_counts(K));
        // a subcomplex subdivides to a subcomplex
        auto maxes = maximal_faces(K);
        auto L = simplicial_from(N, {maxes[0]});
        auto SL = subdivide(L);
        CHECK(std::includes(S.faces.begin(), S.faces.end(), SL.faces.begin(), SL.faces.end()));
    }
    auto sd2 = subdivide(subdivide(full_simplex(1)));
    CHECK(face_counts(sd2) == std::vector<int>{5, 4});
}

TEST_CASE("product embedding") {
    auto p0 = product_embedding(0);
    CHECK(p0.vertex == std::vector<int>{0, 1});
    CHECK(p0.gamma.A == Mat{{1}});  // A^1 -> A^0 x A^1, t -> (., t)
    auto p1 = product_embedding(1);
    CHECK(p1.vertex == std::vector<int>{0, 1, 2, 3});
    Mat v3 = apply(p1.gamma, vertex_point(3, 3));
    CHECK(v3 == Mat{{1}, {1}});
    for (int N = 0; N <= 3; ++N) {
        auto p = product_embedding(N);
        auto prism = product_with_interval(full_simplex(N));
        auto maxes = maximal_faces(prism);
        CHECK(maxes.size() == static_cast<size_t>(N + 1));
        for (auto& s : maxes) {
            CHECK(static_cast<int>(s.size()) == N + 2);
            for (int k : s) {
                int i = k % (N + 1), j = k / (N + 1);
                CHECK(apply(p.gamma, vertex_point(2 * N + 1, k)) == vstack(vertex_point(N, i), Mat{{j}}));
            }
        }
    }
    // nondegenerate simplices of K x Delta^1 are product-order chains over faces of K
    Gen g(64);
    for (int trial = 0; trial < 10; ++trial) {
        int N = g.uniform(1, 3);
        auto K = random_subset(g, N);
        auto P = product_with_interval(K);
        std::set<Face> oracle;
        int M = 2 * N + 1;
        for (unsigned mask = 1; mask < (1u << (M + 1)); ++mask) {
            Face s, proj;
            bool chain = true;
            int pi = -1, pj = -1;
            for (int k = 0; k <= M; ++k) {
                if (!(mask >> k & 1)) continue;
                int i = k % (N + 1), j = k / (N + 1);
                if (i < pi || j < pj) chain = false;
                pi = i;
                pj = j;
                s.push_back(k);
                if (proj.empty() || proj.back() != i) proj.push_back(i);
            }
            // vertices sorted by k are ordered by j first; a chain needs i nondecreasing too
            if (chain && K.faces.count(proj)) oracle.insert(s);
        }
        CHECK(P.faces == oracle);
    }
}
