#include "quadcx/selfdual.hpp"

#include <algorithm>
#include <string>

namespace quadcx {

namespace {

Mat rows_at(const Mat& m, const std::vector<int>& idx) { return m.select_rows(idx); }

bool symmetric_mat(const Mat& m) { return m.is_square() && m == m.transpose(); }

}  // namespace

bool is_symmetric(const ChainMap& theta) {
    if (!(theta.tgt == dual(theta.src))) return false;
    return maps_equal(theta, dual(theta));
}

FreeComplex SelfDualComplex::assembled() const {
    int n = Q.rows();
    int top = pos.empty_range() ? 0 : std::max(0, pos.hi());
    std::vector<int> ranks;
    std::vector<Mat> diffs;
    for (int i = -top; i <= top; ++i) ranks.push_back(i == 0 ? n : pos.rank(std::abs(i)));
    Mat qinv = inverse_or_throw(Q);
    for (int i = -top; i < top; ++i) {
        if (i < -1) diffs.push_back(pos.d(-i - 1).transpose());
        else if (i == -1) diffs.push_back(qinv * a.transpose());
        else if (i == 0) diffs.push_back(a);
        else diffs.push_back(pos.d(i));
    }
    return FreeComplex(-top, ranks, diffs);
}

ChainMap SelfDualComplex::theta() const {
    FreeComplex c = assembled();
    ChainMap t{c, dual(c), {}};
    for (int i = c.lo(); i <= c.hi(); ++i) t.comps[i] = i == 0 ? Q : Mat::identity(c.rank(i));
    return t;
}

void validate_self_dual(const SelfDualComplex& s) {
    if (!symmetric_mat(s.Q)) fail(Errc::InvalidArgument, "Q is not symmetric");
    auto qinv = inverse(s.Q);
    if (!qinv) fail(Errc::Singular, "Q is not invertible");
    if (!s.pos.empty_range() && s.pos.lo() < 1) {
        for (int i = s.pos.lo(); i <= 0; ++i)
            if (s.pos.rank(i) != 0) fail(Errc::ShapeMismatch, "positive part has terms in degree <= 0");
    }
    if (!is_complex(s.pos)) fail(Errc::NotAComplex, "positive part");
    if (s.a.rows() != s.pos.rank(1) || s.a.cols() != s.Q.rows()) fail(Errc::ShapeMismatch, "a has the wrong shape");
    if (!(s.pos.d(1) * s.a).is_zero()) fail(Errc::NotAComplex, "d(1) a != 0");
    if (!(s.a * *qinv * s.a.transpose()).is_zero()) fail(Errc::IsotropyFailure, "a Q^-1 a^T != 0");
}

Representative trivial_representative(const SelfDualComplex& s) {
    Representative r{s, s.quad(), {}, true};
    r.alpha = identity_map(r.ref.carrier);
    return r;
}

FreeComplex truncate_below(const FreeComplex& c, int k) {
    if (c.empty_range() || c.hi() < k) return FreeComplex();
    int lo = std::max(c.lo(), k);
    std::vector<int> ranks;
    std::vector<Mat> diffs;
    for (int i = lo; i <= c.hi(); ++i) ranks.push_back(c.rank(i));
    for (int i = lo; i < c.hi(); ++i) diffs.push_back(c.d(i));
    return FreeComplex(lo, ranks, diffs);
}

ChainMap truncate_below(const ChainMap& f, int k) {
    ChainMap g{truncate_below(f.src, k), truncate_below(f.tgt, k), {}};
    for (auto& [i, m] : f.comps)
        if (i >= k) g.comps[i] = m;
    return g;
}

QuadComplex symmetrize(const QuadComplex& q) {
    if (!(q.theta.tgt == dual(q.carrier)) || !(q.theta.src == q.carrier))
        fail(Errc::ShapeMismatch, "theta must map the carrier to its dual");
    return {q.carrier, scale(make_rat(1, 2), add(q.theta, dual(q.theta)))};
}

Splice splice_raw(const ChainMap& f) {
    const FreeComplex& A = f.src;
    const FreeComplex& B = f.tgt;
    int b0 = B.rank(0), a1 = A.rank(1);
    Mat c0 = block2(B.d(0), -f.at(1), Mat(A.rank(2), b0), A.d(1));
    Mat K = kernel_basis(c0);
    std::vector<int> fr = free_rows(K);
    int k = K.cols();

    int lo = 0, hi = 0;
    if (!B.empty_range()) lo = std::min(lo, B.lo());
    if (!A.empty_range()) hi = std::max(hi, A.hi());
    std::vector<int> ranks;
    std::vector<Mat> diffs;
    for (int i = lo; i <= hi; ++i) ranks.push_back(i < 0 ? B.rank(i) : i == 0 ? k : A.rank(i));
    for (int i = lo; i < hi; ++i) {
        if (i < -1) diffs.push_back(B.d(i));
        else if (i == -1) diffs.push_back(rows_at(vstack(B.d(-1), Mat(a1, B.rank(-1))), fr));
        else if (i == 0) diffs.push_back(K.block(b0, 0, a1, k));
        else diffs.push_back(A.d(i));
    }
    Splice s;
    s.af = FreeComplex(lo, ranks, diffs);
    s.kernel = K;
    s.eta_minus = ChainMap{A, s.af, {}};
    s.eta_plus = ChainMap{s.af, B, {}};
    auto [alo, ahi] = span_of(A, s.af);
    for (int i = alo; i <= ahi; ++i) {
        if (i < 0) s.eta_minus.comps[i] = f.at(i);
        else if (i == 0) s.eta_minus.comps[i] = rows_at(vstack(f.at(0), A.d(0)), fr);
        else s.eta_minus.comps[i] = Mat::identity(A.rank(i));
    }
    auto [blo, bhi] = span_of(s.af, B);
    for (int i = blo; i <= bhi; ++i) {
        if (i < 0) s.eta_plus.comps[i] = Mat::identity(B.rank(i));
        else if (i == 0) s.eta_plus.comps[i] = K.block(0, 0, b0, k);
        else s.eta_plus.comps[i] = f.at(i);
    }
    return s;
}

Splice splice(const ChainMap& f) {
    if (!is_chain_map(f)) fail(Errc::InvalidArgument, "not a chain map");
    if (!is_qis(f)) fail(Errc::NotQis, "splicing needs a quasi-isomorphism");
    return splice_raw(f);
}

std::optional<int> truncated_splice_defect(const ChainMap& a_plus) {
    const FreeComplex& A = a_plus.src;
    if (!A.empty_range())
        for (int i = A.lo(); i <= std::min(0, A.hi()); ++i)
            if (A.rank(i) != 0) return i;
    int top = std::max(A.empty_range() ? 0 : A.hi(), a_plus.tgt.empty_range() ? 0 : a_plus.tgt.hi());
    auto hA = cohomology(A);
    auto hB = cohomology(a_plus.tgt);
    for (int i = 1; i <= top + 1; ++i) {
        Mat m = induced_on_cohomology(a_plus, i);
        int r = rank(m);
        int ha = hA.count(i) ? hA[i] : 0, hb = hB.count(i) ? hB[i] : 0;
        if (r != hb) return i;
        if (i >= 2 && r != ha) return i;
    }
    return std::nullopt;
}

Splice splice_truncated(const ChainMap& a_plus) {
    if (!is_chain_map(a_plus)) fail(Errc::InvalidArgument, "not a chain map");
    if (auto bad = truncated_splice_defect(a_plus))
        fail(Errc::PreconditionFailed, "truncated splice fails in degree " + std::to_string(*bad));
    return splice_raw(a_plus);
}

Mat splice_coords(const Splice& s, const Mat& v) {
    Mat c = rows_at(v, free_rows(s.kernel));
    if (!(s.kernel * c == v)) fail(Errc::Internal, "vector outside the spliced kernel");
    return c;
}

ChainMap duality_identification(const ChainMap& f) {
    const FreeComplex& A = f.src;
    const FreeComplex& B = f.tgt;
    Splice sf = splice_raw(f);
    ChainMap fd = dual(f);
    Splice sd = splice_raw(fd);
    FreeComplex tgt = dual(sf.af);
    ChainMap D{sd.af, tgt, {}};
    auto [lo, hi] = span_of(sd.af, tgt);
    for (int i = lo; i <= hi; ++i)
        if (i != 0) D.comps[i] = Mat::identity(sd.af.rank(i));
    // (B^0)* + (A^1)* -> (A^0)* + (B^-1)*
    Mat P = block2(f.at(0).transpose(), A.d(0).transpose(), B.d(-1).transpose(), Mat(B.rank(-1), A.rank(1)));
    Mat Z = solve_or_throw(P, sd.kernel, "duality identification");
    D.comps[0] = sf.kernel.transpose() * Z;
    return D;
}

SelfDualRep self_dual_rep(const QuadComplex& q) {
    if (!is_chain_map(q.theta)) fail(Errc::InvalidArgument, "theta is not a chain map");
    if (!is_symmetric(q.theta)) fail(Errc::PreconditionFailed, "theta is not symmetric; symmetrize first");
    SelfDualRep out;
    out.spl = splice(q.theta);
    out.theta_prime = duality_identification(q.theta);
    const FreeComplex& At = out.spl.af;
    if (!is_chain_map(out.theta_prime) || !is_symmetric(out.theta_prime))
        fail(Errc::Internal, "spliced self-duality is not symmetric");
    ChainMap back = compose(dual(out.spl.eta_minus), compose(out.theta_prime, out.spl.eta_minus));
    if (!maps_equal(back, q.theta)) fail(Errc::Internal, "self-dual square does not commute");

    SelfDualComplex sd{out.theta_prime.at(0), truncate_below(At, 1), At.d(0)};
    validate_self_dual(sd);
    if (!(sd.assembled() == At)) fail(Errc::Internal, "assembled complex differs from the splice");
    out.rep = Representative{sd, q, out.spl.eta_minus, true};
    return out;
}

HomotopyIso homotopy_iso(const Splice& sf, const Splice& sg, const ChainMap& f, const ChainMap& g,
                         const Homotopy& h) {
    if (!check_homotopy(f, g, h)) fail(Errc::HomotopyIdentityFails, "f - g != dh + hd");
    const FreeComplex& A = f.src;
    const FreeComplex& B = f.tgt;
    int b0 = B.rank(0), a1 = A.rank(1);
    Mat M = block2(Mat::identity(b0), -h.at(1), Mat(a1, b0), Mat::identity(a1));
    Mat img = M * sf.kernel;
    Mat c = rows_at(img, free_rows(sg.kernel));
    if (!(sg.kernel * c == img)) fail(Errc::HomotopyIdentityFails, "unipotent map leaves the spliced kernel");

    HomotopyIso out;
    out.alpha = ChainMap{sf.af, sg.af, {}};
    auto [lo, hi] = span_of(sf.af, sg.af);
    for (int i = lo; i <= hi; ++i) out.alpha.comps[i] = i == 0 ? c : Mat::identity(sf.af.rank(i));
    if (!is_chain_map(out.alpha) || !is_degreewise_iso(out.alpha))
        fail(Errc::HomotopyIdentityFails, "induced map is not an isomorphism of complexes");

    out.left = Homotopy{A, sg.af, {}};
    out.right = Homotopy{sf.af, B, {}};
    for (auto& [i, m] : h.comps) {
        if (i <= 0) out.left.comps[i] = m;
        else out.right.comps[i] = m;
    }
    if (!check_homotopy(compose(out.alpha, sf.eta_minus), sg.eta_minus, out.left))
        fail(Errc::HomotopyIdentityFails, "left homotopy check");
    if (!check_homotopy(sf.eta_plus, compose(sg.eta_plus, out.alpha), out.right))
        fail(Errc::HomotopyIdentityFails, "right homotopy check");
    return out;
}

HomotopyIso homotopy_iso(const ChainMap& f, const ChainMap& g, const Homotopy& h) {
    if (is_qis(f) && is_qis(g)) return homotopy_iso(splice(f), splice(g), f, g, h);
    return homotopy_iso(splice_truncated(f), splice_truncated(g), f, g, h);
}

}  // namespace quadcx
