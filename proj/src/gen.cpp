#include "quadcx/gen.hpp"

#include <algorithm>

namespace quadcx {

Mat antidiagonal(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, n - 1 - i) = 1;
    return m;
}

int Gen::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

Rat Gen::small_rat(int range) {
    // mostly integers, sometimes halves
    int num = uniform(-range, range);
    return uniform(0, 4) == 0 ? make_rat(num, 2) : Rat(num);
}

Rat Gen::nonzero_rat(int range) {
    Rat r;
    do r = small_rat(range);
    while (r == 0);
    return r;
}

Mat Gen::mat(int rows, int cols, int range) {
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = small_rat(range);
    return m;
}

Mat Gen::invertible(int n) {
    // unit lower times upper with nonzero diagonal, then a row permutation
    Mat l = Mat::identity(n), u = Mat::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (j < i) l(i, j) = small_rat(2);
            else if (j > i) u(i, j) = small_rat(2);
            else u(i, j) = nonzero_rat(2);
        }
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng_);
    return (l * u).select_rows(perm);
}

Mat Gen::symmetric(int n) {
    Mat m = mat(n, n);
    return m + m.transpose();
}

namespace {

FreeComplex split_complex(Gen& g, int lo, int hi, int max_piece, bool with_cohomology) {
    if (hi < lo) return FreeComplex();
    int len = hi - lo + 1;
    std::vector<int> h(len), c(len, 0);
    for (int k = 0; k < len; ++k) {
        h[k] = with_cohomology ? g.uniform(0, max_piece) : 0;
        if (k + 1 < len) c[k] = g.uniform(0, max_piece);
    }
    std::vector<int> ranks(len);
    for (int k = 0; k < len; ++k) ranks[k] = (k ? c[k - 1] : 0) + h[k] + c[k];
    std::vector<Mat> diffs;
    for (int k = 0; k + 1 < len; ++k) {
        Mat d(ranks[k + 1], ranks[k]);
        int src0 = (k ? c[k - 1] : 0) + h[k];
        for (int t = 0; t < c[k]; ++t) d(t, src0 + t) = 1;
        diffs.push_back(d);
    }
    return FreeComplex(lo, ranks, diffs);
}

}  // namespace

ChainMap Gen::conjugation(const FreeComplex& c) {
    std::map<int, Mat> gs;
    for (int i = c.lo(); i <= c.hi(); ++i) gs[i] = invertible(c.rank(i));
    std::vector<int> ranks;
    std::vector<Mat> diffs;
    for (int i = c.lo(); i <= c.hi(); ++i) ranks.push_back(c.rank(i));
    for (int i = c.lo(); i < c.hi(); ++i) diffs.push_back(gs[i + 1] * c.d(i) * inverse_or_throw(gs[i]));
    FreeComplex out = c.empty_range() ? FreeComplex() : FreeComplex(c.lo(), ranks, diffs);
    ChainMap g{c, out, {}};
    for (auto& [i, m] : gs) g.comps[i] = m;
    return g;
}

FreeComplex Gen::complex(int lo, int hi, int max_piece) {
    return conjugation(split_complex(*this, lo, hi, max_piece, true)).tgt;
}

FreeComplex Gen::acyclic(int lo, int hi, int max_piece) {
    return conjugation(split_complex(*this, lo, hi, max_piece, false)).tgt;
}

Homotopy Gen::homotopy(const FreeComplex& src, const FreeComplex& tgt) {
    Homotopy h{src, tgt, {}};
    auto [lo, hi] = span_of(src, tgt);
    for (int i = lo; i <= hi + 1; ++i) {
        int r = tgt.rank(i - 1), c = src.rank(i);
        if (r && c) h.comps[i] = mat(r, c, 2);
    }
    return h;
}

ChainMap Gen::qis_from(const FreeComplex& src, int pad_lo, int pad_hi) {
    FreeComplex p = acyclic(pad_lo, pad_hi);
    FreeComplex b0 = direct_sum(src, p);
    ChainMap incl{src, b0, {}};
    auto [lo, hi] = span_of(src, b0);
    for (int i = lo; i <= hi; ++i)
        incl.comps[i] = vstack(Mat::identity(src.rank(i)), Mat(p.rank(i), src.rank(i)));
    ChainMap g = conjugation(b0);
    ChainMap f = compose(g, incl);
    return add(f, homotopy_boundary(homotopy(src, f.tgt)));
}

SelfDualComplex Gen::self_dual(int max_middle, int max_top) {
    int n = uniform(0, max_middle);
    Mat G = invertible(n);
    Mat Q = G.transpose() * antidiagonal(n) * G;
    int s = uniform(0, n / 2);
    Mat L = inverse_or_throw(G) * Mat::identity(n).block(0, 0, n, s);
    int top = uniform(0, max_top);
    std::vector<int> ranks;
    std::vector<Mat> diffs;
    Mat a(0, n);
    if (top >= 1) {
        int r1 = uniform(0, 3);
        a = mat(r1, s) * L.transpose() * Q;
        ranks.push_back(r1);
        Mat prev = a;
        for (int i = 2; i <= top; ++i) {
            Mat left = kernel_basis(prev.transpose()).transpose();
            int r = uniform(0, 3);
            Mat d = mat(r, left.rows()) * left;
            diffs.push_back(d);
            ranks.push_back(r);
            prev = d;
        }
    }
    FreeComplex pos = ranks.empty() ? FreeComplex() : FreeComplex(1, ranks, diffs);
    return SelfDualComplex{Q, pos, a};
}

QuadComplex Gen::quad_around(const SelfDualComplex& s, int pad) {
    FreeComplex sc = s.assembled();
    ChainMap ts = s.theta();
    FreeComplex p = acyclic(-pad - 1, pad + 1);
    FreeComplex e0 = direct_sum(sc, p);
    ChainMap p0{e0, sc, {}};
    auto [lo, hi] = span_of(e0, sc);
    for (int i = lo; i <= hi; ++i) p0.comps[i] = hstack(Mat::identity(sc.rank(i)), Mat(sc.rank(i), p.rank(i)));
    ChainMap g = conjugation(e0);
    ChainMap proj = compose(p0, inverse_iso(g));
    const FreeComplex& e = g.tgt;
    ChainMap theta = compose(dual(proj), compose(ts, proj));
    theta = add(theta, homotopy_boundary(homotopy(e, dual(e))));
    return {e, theta};
}

ChainMap Gen::positive_lift(const SelfDualComplex& s, bool pad) {
    FreeComplex E = s.assembled();
    const FreeComplex& P = s.pos;
    int top = P.empty_range() ? 0 : P.hi();
    int n1 = E.rank(1);
    for (int attempt = 0; attempt < 200; ++attempt) {
        Mat d1 = E.d(1);
        Mat ker = kernel_basis(d1);
        Mat im = image_basis(s.a);
        // complement of ker d1, then of im a inside ker d1
        Mat C(n1, 0), H(n1, 0);
        Mat cur = ker;
        for (int j = 0; j < n1; ++j) {
            Mat e = Mat::identity(n1).col(j);
            if (rank(hstack(cur, e)) > rank(cur)) {
                cur = hstack(cur, e);
                C = hstack(C, e);
            }
        }
        cur = im;
        for (int j = 0; j < ker.cols(); ++j) {
            Mat v = ker.col(j);
            if (rank(hstack(cur, v)) > rank(cur)) {
                cur = hstack(cur, v);
                H = hstack(H, v);
            }
        }
        int w = uniform(0, im.cols());
        Mat W = im * mat(im.cols(), w, 2);
        Mat V = hstack(hstack(C, H), W);
        if (rank(V) != V.cols()) continue;

        std::vector<int> ranks;
        std::vector<Mat> diffs;
        ranks.push_back(V.cols());
        for (int i = 2; i <= std::max(top, 1); ++i) {
            ranks.push_back(E.rank(i));
            diffs.push_back(i == 2 ? d1 * V : E.d(i - 1));
        }
        while (ranks.size() > 1 && ranks.back() == 0) {
            ranks.pop_back();
            diffs.pop_back();
        }
        FreeComplex A(1, ranks, diffs);
        ChainMap e{A, E, {}};
        for (int i = 1; i <= A.hi(); ++i) e.comps[i] = i == 1 ? V : Mat::identity(E.rank(i));

        if (pad && uniform(0, 1)) {
            FreeComplex p = acyclic(1, uniform(1, 3));
            FreeComplex Ap = direct_sum(A, p);
            ChainMap ep{Ap, E, {}};
            for (int i = 1; i <= Ap.hi(); ++i) ep.comps[i] = hstack(e.at(i), Mat(E.rank(i), p.rank(i)));
            ChainMap g = conjugation(Ap);
            e = compose(ep, inverse_iso(g));
        } else if (pad) {
            ChainMap g = conjugation(A);
            e = compose(e, inverse_iso(g));
        }
        if (pad && uniform(0, 1)) e = add(e, homotopy_boundary(homotopy(e.src, E)));

        if (truncated_splice_defect(e)) continue;
        const FreeComplex& Af = e.src;
        if (rank(vstack(e.at(1), Af.d(1))) != Af.rank(1)) continue;
        return e;
    }
    fail(Errc::Internal, "could not draw an admissible positive lift");
}

}  // namespace quadcx
