#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "quadcx/gen.hpp"
#include "quadcx/linalg.hpp"

using namespace quadcx;

namespace {

// Leibniz expansion, independent of the elimination code
Rat leibniz_det(const Mat& m) {
    int n = m.rows();
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    Rat total = 0;
    do {
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (p[i] > p[j]) ++inv;
        Rat term = inv % 2 ? -1 : 1;
        for (int i = 0; i < n; ++i) term *= m(i, p[i]);
        total += term;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

}  // namespace

TEST_CASE("rationals print in lowest terms") {
    CHECK(rat_str(make_rat(6, 4)) == "3/2");
    CHECK(rat_str(make_rat(-4, 2)) == "-2");
    CHECK(rat_parse("10/-4") == make_rat(-5, 2));
    CHECK(rat_parse("7") == Rat(7));
}

TEST_CASE("kernel basis examples") {
    CHECK(kernel_basis(Mat::identity(2)).cols() == 0);
    CHECK(kernel_basis(Mat::identity(2)).rows() == 2);
    CHECK(kernel_basis(Mat(2, 2)) == Mat::identity(2));
    CHECK(kernel_basis(Mat{{1, 2}, {2, 4}}) == Mat{{-2}, {1}});
}

TEST_CASE("solve_linear examples") {
    Mat b{{1, 2}, {3, 4}};
    CHECK(*solve_linear(Mat::identity(2), b) == b);
    CHECK(*solve_linear(Mat{{1, 1}}, Mat{{3}}) == Mat{{3}, {0}});
    CHECK_FALSE(solve_linear(Mat{{0}}, Mat{{1}}).has_value());
    CHECK_THROWS_AS(solve_or_throw(Mat{{0}}, Mat{{1}}, "x"), Error);
}

TEST_CASE("rank det inverse examples") {
    CHECK(det(Mat::identity(3)) == 1);
    CHECK(det(Mat{{0, 1}, {1, 0}}) == -1);
    CHECK(leibniz_det(Mat{{0, 1}, {1, 0}}) == -1);
    CHECK(rank(Mat{{1, 2}, {2, 4}}) == 1);
    CHECK_FALSE(inverse(Mat{{1, 2}, {2, 4}}).has_value());
    try {
        inverse_or_throw(Mat{{1, 2}, {2, 4}});
        FAIL("expected Singular");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::Singular);
    }
}

TEST_CASE("random kernel, rank, inverse and solve properties") {
    Gen g(11);
    for (int trial = 0; trial < 60; ++trial) {
        int r = g.uniform(0, 5), c = g.uniform(0, 5);
        Mat m = g.mat(r, c);
        if (g.uniform(0, 1)) m = m * g.mat(c, c).transpose();  // encourage rank drops
        Mat k = kernel_basis(m);
        CHECK((m * k).is_zero());
        CHECK(rank(m) + k.cols() == c);
        CHECK(rank(k) == k.cols());
        if (m.is_square()) {
            CHECK(det(m) == leibniz_det(m));
            if (auto inv = inverse(m)) CHECK(*inv * m == Mat::identity(r));
            else CHECK(det(m) == 0);
        }
        Mat b = g.mat(r, 1);
        auto x = solve_linear(m, b);
        CHECK(x.has_value() == (rank(hstack(m, b)) == rank(m)));
        if (x) CHECK(m * *x == b);
    }
}

TEST_CASE("canonical basis depends only on the span") {
    Gen g(12);
    for (int trial = 0; trial < 30; ++trial) {
        int n = g.uniform(1, 5), k = g.uniform(0, n);
        Mat v = g.mat(n, k);
        Mat w = v * g.invertible(k);
        Mat cv = canonical_basis(v);
        CHECK(cv == canonical_basis(w));
        CHECK(same_span(cv, v));
        auto fr = free_rows(cv);
        CHECK(cv.select_rows(fr) == Mat::identity(cv.cols()));
    }
}
