#include "quadcx/isored.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace quadcx {

namespace {

Homotopy hadd(const Homotopy& a, const Homotopy& b) {
    Homotopy out{a.src, a.tgt, {}};
    auto [lo, hi] = span_of(a.src, a.tgt);
    for (int i = lo; i <= hi + 1; ++i) {
        Mat m = a.at(i) + b.at(i);
        if (m.rows() && m.cols()) out.comps[i] = m;
    }
    return out;
}

Homotopy hscale(const Rat& s, const Homotopy& a) {
    Homotopy out = a;
    for (auto& [i, m] : out.comps) m = s * m;
    return out;
}

// src sigma_{>=1}, target kept
ChainMap positive_part(const ChainMap& f) {
    ChainMap g{truncate_below(f.src, 1), f.tgt, {}};
    for (auto& [i, m] : f.comps)
        if (i >= 1) g.comps[i] = m;
    return g;
}

bool iso_in(const ChainMap& f, int from, int to) {
    for (int i = from; i <= to; ++i) {
        Mat m = f.at(i);
        if (!m.is_square() || rank(m) != m.rows()) return false;
    }
    return true;
}

// greedy unit vectors extending the columns of `base` to a basis of Q^n
std::vector<int> unit_complement(const Mat& base, int n) {
    std::vector<int> chosen;
    Mat cur = base;
    int r = rank(cur);
    for (int j = 0; j < n; ++j) {
        Mat e(n, 1);
        e(j, 0) = 1;
        Mat next = hstack(cur, e);
        int r2 = rank(next);
        if (r2 > r) {
            chosen.push_back(j);
            cur = next;
            r = r2;
        }
    }
    return chosen;
}

Mat hyperbolic(int k) {
    Mat m(2 * k, 2 * k);
    for (int i = 0; i < k; ++i) m(i, k + i) = m(k + i, i) = 1;
    return m;
}

// E + K + dual(K) as a self-dual complex; K lives in degrees >= 0
SelfDualComplex pad_sd(const SelfDualComplex& E, const FreeComplex& K) {
    int n = E.middle_rank(), k0 = K.rank(0);
    SelfDualComplex T;
    T.Q = block_diag(E.Q, hyperbolic(k0));
    T.pos = direct_sum(E.pos, truncate_below(K, 1));
    int r1 = E.pos.rank(1), s1 = K.rank(1);
    T.a = Mat(r1 + s1, n + 2 * k0);
    T.a.set_block(0, 0, E.a);
    T.a.set_block(r1, n, K.d(0));
    return T;
}

// E^i -> E^i + K^i + K^{-i}*
ChainMap pad_inclusion(const FreeComplex& Ea, const FreeComplex& Ta, const FreeComplex& K) {
    ChainMap m{Ea, Ta, {}};
    auto [lo, hi] = span_of(Ea, Ta);
    for (int i = lo; i <= hi; ++i)
        m.comps[i] = vstack(Mat::identity(Ea.rank(i)), Mat(K.rank(i) + K.rank(-i), Ea.rank(i)));
    return m;
}

Representative padded_rep(const Representative& E, const SelfDualComplex& T, const FreeComplex& K) {
    Representative r{T, E.ref, {}, false};
    if (E.has_alpha) {
        r.alpha = compose(pad_inclusion(E.sd.assembled(), T.assembled(), K), E.alpha);
        r.has_alpha = true;
    }
    return r;
}

// vectors (b, a) of a kernel basis pushed through diag(u, id) and re-expressed in s
Mat push_degree0(const Splice& from, const Splice& to, const Mat& u, int a1) {
    Mat lifted = block_diag(u, Mat::identity(a1)) * from.kernel;
    return splice_coords(to, lifted);
}

ChainMap identity_off_zero(const FreeComplex& src, const FreeComplex& tgt, const Mat& m0) {
    ChainMap m{src, tgt, {}};
    auto [lo, hi] = span_of(src, tgt);
    for (int i = lo; i <= hi; ++i) m.comps[i] = i == 0 ? m0 : Mat::identity(src.rank(i));
    return m;
}

}  // namespace

bool sd_equal(const SelfDualComplex& a, const SelfDualComplex& b) {
    return a.Q == b.Q && a.a == b.a && a.pos == b.pos;
}

IsotropicReduction identity_reduction(const Representative& E) {
    FreeComplex c = E.sd.assembled();
    return IsotropicReduction{E, E, c, identity_map(c), identity_map(c), false};
}

bool rank_condition(const IsotropicReduction& r) {
    Mat m = vstack(r.e.at(1), r.mid.d(1));
    return rank(m) == r.mid.rank(1);
}

IsotropicReduction make_reduction(const Representative& E, const ChainMap& e_plus, bool generalized) {
    FreeComplex Ea = E.sd.assembled();
    if (!(e_plus.tgt == Ea)) fail(Errc::ShapeMismatch, "e_plus must land in the assembled target");
    if (!generalized) {
        const FreeComplex& A = e_plus.src;
        if (rank(vstack(e_plus.at(1), A.d(1))) != A.rank(1))
            fail(Errc::RankCondition, "(e_1, d) is not injective");
    }
    Splice s = splice_truncated(e_plus);
    IsotropicReduction r;
    r.mid = s.af;
    r.e = s.eta_plus;
    r.generalized = generalized;
    ChainMap th = compose(dual(r.e), compose(E.sd.theta(), r.e));
    SelfDualRep sr = self_dual_rep(QuadComplex{r.mid, th});
    r.f = sr.spl.eta_minus;
    r.source = Representative{sr.rep.sd, E.ref, {}, false};
    r.target = E;
    return r;
}

ReductionReport validate_reduction(const IsotropicReduction& r) {
    ReductionReport rep;
    FreeComplex Fa = r.source.sd.assembled(), Ea = r.target.sd.assembled();
    rep.f_chain = r.f.src == r.mid && r.f.tgt == Fa && is_chain_map(r.f);
    rep.e_chain = r.e.src == r.mid && r.e.tgt == Ea && is_chain_map(r.e);
    if (!rep.f_chain || !rep.e_chain) return rep;
    rep.f_qis = is_qis(r.f);
    rep.e_qis = is_qis(r.e);
    auto [lo, hi] = span_of(r.mid, direct_sum(Fa, Ea));
    rep.f_iso_positive = iso_in(r.f, 1, hi);
    rep.e_iso_negative = iso_in(r.e, lo, -1);
    rep.rank_condition = r.generalized || rank_condition(r);
    ChainMap lhs = compose(dual(r.f), compose(r.source.sd.theta(), r.f));
    ChainMap rhs = compose(dual(r.e), compose(r.target.sd.theta(), r.e));
    rep.square = maps_equal(lhs, rhs);
    return rep;
}

IsotropicReduction compose_reductions(const IsotropicReduction& xi, const IsotropicReduction& zeta) {
    if (!sd_equal(xi.target.sd, zeta.source.sd)) fail(Errc::Mismatch, "middle representatives differ");
    const ChainMap& g = xi.f;    // A_xi -> G
    const ChainMap& f = xi.e;    // A_xi -> F
    const ChainMap& fp = zeta.f; // A_zeta -> F
    const ChainMap& e = zeta.e;  // A_zeta -> E
    const FreeComplex& Ax = xi.mid;
    const FreeComplex& Az = zeta.mid;
    FreeComplex Ea = zeta.target.sd.assembled();

    int top = std::max({Ax.empty_range() ? 0 : Ax.hi(), Az.empty_range() ? 0 : Az.hi(), 1});
    std::map<int, Mat> b;
    ChainMap cplus{truncate_below(Ax, 1), Ea, {}};
    for (int i = 1; i <= top; ++i) {
        b[i] = inverse_or_throw(fp.at(i)) * f.at(i);
        cplus.comps[i] = e.at(i) * b[i];
    }
    Splice sc = splice_truncated(cplus);

    ChainMap s{sc.af, Ax, {}}, cp{sc.af, Az, {}};
    auto [lo, hi] = span_of(sc.af, direct_sum(Ax, Az));
    for (int i = lo; i <= hi; ++i) {
        if (i < 0) {
            Mat einv = inverse_or_throw(e.at(i));
            s.comps[i] = inverse_or_throw(f.at(i)) * fp.at(i) * einv;
            cp.comps[i] = einv;
        } else if (i > 0) {
            s.comps[i] = Mat::identity(Ax.rank(i));
            cp.comps[i] = b.count(i) ? b[i] : Mat(Az.rank(i), Ax.rank(i));
        }
    }
    int e0r = Ea.rank(0), k = sc.kernel.cols();
    Mat X = sc.kernel.block(0, 0, e0r, k);
    Mat Aa = sc.kernel.block(e0r, 0, Ax.rank(1), k);
    Mat Y = solve_or_throw(vstack(e.at(0), Az.d(0)), vstack(X, b[1] * Aa), "composition: degree-0 lift into A_zeta");
    Mat Ap = solve_or_throw(vstack(f.at(0), Ax.d(0)), vstack(fp.at(0) * Y, Aa), "composition: degree-0 lift into A_xi");
    s.comps[0] = Ap;
    cp.comps[0] = Y;

    if (!is_chain_map(s) || !is_chain_map(cp)) fail(Errc::Internal, "composition maps are not chain maps");
    if (!maps_equal(compose(f, s), compose(fp, cp)) || !maps_equal(compose(e, cp), sc.eta_plus))
        fail(Errc::Internal, "composition diagram does not commute");

    IsotropicReduction out;
    out.source = xi.source;
    out.target = zeta.target;
    out.mid = sc.af;
    out.f = compose(g, s);
    out.e = sc.eta_plus;
    out.generalized = xi.generalized || zeta.generalized;
    return out;
}

std::optional<ChainMap> reductions_equivalent(const IsotropicReduction& a, const IsotropicReduction& b) {
    if (!sd_equal(a.source.sd, b.source.sd) || !sd_equal(a.target.sd, b.target.sd)) return std::nullopt;
    ChainMap u{a.mid, b.mid, {}};
    auto [lo, hi] = span_of(a.mid, b.mid);
    for (int i = lo; i <= hi; ++i) {
        Mat lhs = vstack(b.f.at(i), b.e.at(i));
        if (rank(lhs) != b.mid.rank(i)) return std::nullopt;
        auto x = solve_linear(lhs, vstack(a.f.at(i), a.e.at(i)));
        if (!x) return std::nullopt;
        u.comps[i] = *x;
    }
    if (!is_chain_map(u) || !is_degreewise_iso(u)) return std::nullopt;
    return u;
}

IsotropicData isotropic_data(const Mat& Q, const Mat& K) {
    IsotropicData d;
    d.Q = Q;
    d.K = canonical_basis(K);
    if (!(d.K.transpose() * Q * d.K).is_zero()) fail(Errc::IsotropyFailure, "K is not isotropic");
    d.perp = kernel_basis(d.K.transpose() * Q);
    d.K_in_perp = d.K.select_rows(free_rows(d.perp));
    if (!(d.perp * d.K_in_perp == d.K)) fail(Errc::Internal, "K is not inside K^perp");
    std::vector<int> comp = unit_complement(d.K_in_perp, d.perp.cols());
    d.complement = d.perp.select_cols(comp);
    d.form = d.complement.transpose() * Q * d.complement;
    return d;
}

Mat quotient_coords(const IsotropicData& d, const Mat& v) {
    Mat c = v.select_rows(free_rows(d.perp));
    if (!(d.perp * c == v)) fail(Errc::NoSolution, "vector outside K^perp");
    Mat basis = hstack(d.K_in_perp, d.complement.select_rows(free_rows(d.perp)));
    Mat z = inverse_or_throw(basis) * c;
    int k = d.K.cols();
    return z.block(k, 0, z.rows() - k, z.cols());
}

bool pair_equal(const PairMorphism& a, const PairMorphism& b) {
    return a.K == b.K && a.qIso == b.qIso && a.phi == b.phi && a.complement == b.complement;
}

Rat torsion(const FreeComplex& c, const std::map<int, Mat>& hb) {
    Rat tau = 1;
    if (c.empty_range()) return tau;
    Mat s_prev;
    for (int i = c.lo(); i <= c.hi(); ++i) {
        int n = c.rank(i);
        Mat bprev = i > c.lo() ? c.d(i - 1) * s_prev : Mat(n, 0);
        auto it = hb.find(i);
        Mat h = it != hb.end() ? it->second : Mat(n, 0);
        Rref rr = rref(c.d(i));
        Mat s = Mat::identity(n).select_cols(rr.pivots);
        Mat m = hstack(hstack(bprev, h), s);
        if (!m.is_square()) fail(Errc::ShapeMismatch, "cohomology basis has the wrong size in degree " + std::to_string(i));
        Rat dt = det(m);
        if (dt == 0) fail(Errc::Singular, "torsion basis is degenerate in degree " + std::to_string(i));
        if (i % 2 == 0) tau *= dt;
        else tau /= dt;
        s_prev = s;
    }
    return tau;
}

PairMorphism extract_pair_morphism(const IsotropicReduction& r) {
    const SelfDualComplex& E = r.target.sd;
    const SelfDualComplex& F = r.source.sd;
    if (!rank_condition(r)) fail(Errc::RankCondition, "extraction needs a genuine reduction");
    int m = E.middle_rank();
    Mat e0 = r.e.at(0), f0 = r.f.at(0);
    Mat K = kernel_basis(e0.transpose() * E.Q);
    int k = K.cols();
    if (!(2 * k < m)) fail(Errc::HalfRankIsotropic, "need 2 rank K < rank E^0");
    IsotropicData d = isotropic_data(E.Q, K);
    if (rank(e0) != e0.cols() || !same_span(e0, d.perp))
        fail(Errc::Internal, "e_0 is not an isomorphism onto K^perp");
    Mat X = solve_or_throw(f0, Mat::identity(F.middle_rank()), "f_0 is not surjective");
    if (!span_contains(d.K, e0 * kernel_basis(f0))) fail(Errc::Internal, "ker f_0 is not e_0^{-1} K");
    PairMorphism pm;
    pm.K = d.K;
    pm.complement = d.complement;
    pm.form = d.form;
    pm.qIso = quotient_coords(d, e0 * X);
    if (!pm.qIso.is_square() || !inverse(pm.qIso)) fail(Errc::Internal, "qIso is not invertible");
    if (!(pm.qIso.transpose() * d.form * pm.qIso == F.Q)) fail(Errc::Internal, "qIso does not preserve the forms");

    // cone of F+ -> E+, with h^1 dual to K
    const FreeComplex& Fp = F.pos;
    const FreeComplex& Ep = E.pos;
    ChainMap g{Fp, Ep, {}};
    int top = std::max({Fp.empty_range() ? 0 : Fp.hi(), Ep.empty_range() ? 0 : Ep.hi(), 1});
    for (int i = 1; i <= top; ++i) g.comps[i] = r.e.at(i) * inverse_or_throw(r.f.at(i));
    if (!is_chain_map(g)) fail(Errc::Internal, "positive comparison is not a chain map");
    FreeComplex C = cone(g);
    for (auto [i, h] : cohomology(C))
        if (h != (i == 1 ? k : 0))
            fail(Errc::Internal, "cone of the positive truncation has unexpected cohomology in degree " + std::to_string(i));
    Mat Z = cohomology_reps(C, 1);
    int e1 = Ep.rank(1), a2 = r.mid.rank(2);
    Mat x = Z.block(0, 0, e1, Z.cols());
    Mat w = Z.block(e1, 0, Z.rows() - e1, Z.cols());
    Mat c0 = block2(E.a, -r.e.at(1), Mat(a2, m), r.mid.d(1));
    Mat lift = solve_or_throw(c0, vstack(x, inverse_or_throw(r.f.at(2)) * w), "lifting through the cone of e");
    Mat y = lift.block(0, 0, m, lift.cols());
    Mat pairing = d.K.transpose() * E.Q * y;
    Mat dualb = Z * inverse_or_throw(pairing);
    // sign normalization making phi multiplicative under composition
    int sg = k * rank(Ep.d(1));
    for (int i = 1; i <= top; i += 2) sg += Ep.rank(i) * Fp.rank(i);
    pm.phi = 1 / torsion(C, {{1, dualb}});
    if (sg % 2) pm.phi = -pm.phi;
    return pm;
}

PairMorphism pair_compose(const Mat& QE, const PairMorphism& xi, const PairMorphism& zeta) {
    Mat lift = xi.complement * xi.qIso * zeta.K;
    Mat span = hstack(xi.K, lift);
    Mat L = canonical_basis(span);
    Mat M = span.select_rows(free_rows(L));
    if (!(L * M == span) || !M.is_square()) fail(Errc::Internal, "Lambda is not spanned as expected");
    IsotropicData dl = isotropic_data(QE, L);
    PairMorphism out;
    out.K = dl.K;
    out.complement = dl.complement;
    out.form = dl.form;
    out.qIso = quotient_coords(dl, xi.complement * xi.qIso * zeta.complement * zeta.qIso);
    out.phi = xi.phi * zeta.phi * det(M);
    return out;
}

IsotropicReduction pad_with_acyclic(const Representative& E, const FreeComplex& kc) {
    if (!is_complex(kc)) fail(Errc::NotAComplex, "padding complex");
    if (!kc.empty_range())
        for (int i = kc.lo(); i < 0 && i <= kc.hi(); ++i)
            if (kc.rank(i) != 0) fail(Errc::PreconditionFailed, "padding complex has terms in negative degrees");
    if (!is_acyclic(kc)) fail(Errc::NotAcyclic, "padding complex is not acyclic");
    FreeComplex K = truncate_below(kc, 0);
    SelfDualComplex T = pad_sd(E.sd, K);
    validate_self_dual(T);
    FreeComplex Ea = E.sd.assembled(), Ta = T.assembled();
    FreeComplex Kd = dual(K);

    IsotropicReduction r;
    r.source = E;
    r.target = padded_rep(E, T, K);
    r.mid = direct_sum(Ea, Kd);
    r.f = ChainMap{r.mid, Ea, {}};
    r.e = ChainMap{r.mid, Ta, {}};
    auto [lo, hi] = span_of(r.mid, Ta);
    for (int i = lo; i <= hi; ++i) {
        int ne = Ea.rank(i), nk = K.rank(i), nd = Kd.rank(i);
        r.f.comps[i] = hstack(Mat::identity(ne), Mat(ne, nd));
        Mat ei(ne + nk + nd, ne + nd);
        ei.set_block(0, 0, Mat::identity(ne));
        ei.set_block(ne + nk, ne, Mat::identity(nd));
        r.e.comps[i] = ei;
    }
    r.generalized = false;
    if (!validate_reduction(r).ok()) fail(Errc::Internal, "padding does not validate");
    return r;
}

IsotropicReduction cone_identity_padding(const Representative& E) {
    return pad_with_acyclic(E, cone(identity_map(E.sd.pos)));
}

IsotropicReduction genuine_from_generalized(const IsotropicReduction& z) {
    const SelfDualComplex& F = z.source.sd;
    int r1 = F.pos.rank(1);
    FreeComplex K(0, {r1, r1}, {Mat::identity(r1)});
    SelfDualComplex T = pad_sd(z.target.sd, K);
    validate_self_dual(T);
    FreeComplex Fa = F.assembled(), Ta = T.assembled(), Kd = dual(K);
    const FreeComplex& A = z.mid;

    IsotropicReduction r;
    r.source = z.source;
    r.target = padded_rep(z.target, T, K);
    r.mid = direct_sum(A, Kd);
    r.f = ChainMap{r.mid, Fa, {}};
    r.e = ChainMap{r.mid, Ta, {}};
    auto [lo, hi] = span_of(r.mid, direct_sum(Fa, Ta));
    for (int i = lo; i <= hi; ++i) {
        int na = A.rank(i), nd = Kd.rank(i), nk = K.rank(i), ne = z.target.sd.assembled().rank(i);
        Mat extra(Fa.rank(i), nd);
        if (i == -1) extra = Mat::identity(nd);
        if (i == 0) extra = F.assembled().d(-1);
        r.f.comps[i] = hstack(z.f.at(i), extra);
        Mat ei(ne + nk + nd, na + nd);
        ei.set_block(0, 0, z.e.at(i));
        if (i == 0) ei.set_block(ne, 0, z.f.at(1) * A.d(0));
        if (i == 1) ei.set_block(ne, 0, z.f.at(1));
        ei.set_block(ne + nk, na, Mat::identity(nd));
        r.e.comps[i] = ei;
    }
    r.generalized = false;
    ReductionReport rep = validate_reduction(r);
    if (!rep.ok()) fail(Errc::Internal, "padded reduction does not validate");
    return r;
}

ChainMap homotopy_reduction_iso(const Representative& E, const ChainMap& a_plus, const ChainMap& b_plus,
                                const Homotopy& h) {
    if (!check_homotopy(b_plus, a_plus, h)) fail(Errc::HomotopyIdentityFails, "b - a != dh + hd");
    Splice sa = splice_truncated(a_plus), sb = splice_truncated(b_plus);
    HomotopyIso hi = homotopy_iso(sa, sb, a_plus, b_plus, hscale(-1, h));
    const ChainMap& a = sa.eta_plus;
    const ChainMap& b = sb.eta_plus;
    ChainMap c = compose(b, hi.alpha);
    ChainMap th = E.sd.theta();
    ChainMap tha = compose(dual(a), compose(th, a));
    ChainMap thb = compose(dual(b), compose(th, b));
    ChainMap thc = compose(dual(c), compose(th, c));
    const Homotopy& H = hi.right;  // a - c = dH + Hd

    // self-dual homotopy between a^v th a and c^v th c
    Homotopy I0 = hadd(compose(compose(dual(c), th), H), compose(dual(H), compose(th, a)));
    Homotopy I = hscale(make_rat(1, 2), hadd(I0, dual(I0)));
    if (!check_homotopy(tha, thc, I)) fail(Errc::Internal, "self-dual homotopy identity fails");

    SelfDualRep ra = self_dual_rep(QuadComplex{sa.af, tha});
    SelfDualRep rb = self_dual_rep(QuadComplex{sb.af, thb});
    Splice sc = splice(thc);
    HomotopyIso hI = homotopy_iso(ra.spl, sc, tha, thc, I);

    // A_{th c} -> A_{th b}: (y, z) -> (alpha_0^{-T} y, z)
    Mat u = inverse_or_throw(hi.alpha.at(0).transpose());
    Mat m0 = push_degree0(sc, rb.spl, u, sa.af.rank(1));
    ChainMap ident = identity_off_zero(sc.af, rb.spl.af, m0);
    ChainMap beta = compose(ident, hI.alpha);
    beta.src = ra.rep.sd.assembled();
    beta.tgt = rb.rep.sd.assembled();
    if (!is_chain_map(beta) || !is_degreewise_iso(beta))
        fail(Errc::HomotopyIdentityFails, "induced map is not an isomorphism");
    ChainMap back = compose(dual(beta), compose(rb.rep.sd.theta(), beta));
    if (!maps_equal(back, ra.rep.sd.theta())) fail(Errc::HomotopyIdentityFails, "induced map is not self-dual");
    return beta;
}

Refinement common_refinement(const Representative& E, const Representative& F) {
    if (!E.has_alpha || !F.has_alpha) fail(Errc::PreconditionFailed, "representatives carry no chain-level identification");
    if (!(E.ref.carrier == F.ref.carrier) || !maps_equal(E.ref.theta, F.ref.theta))
        fail(Errc::Mismatch, "representatives of different quadratic complexes");
    return common_refinement(E, F, E.alpha, F.alpha);
}

Refinement common_refinement(const Representative& E, const Representative& F, const ChainMap& e,
                             const ChainMap& f) {
    FreeComplex Ea = E.sd.assembled(), Fa = F.sd.assembled();
    if (!(e.tgt == Ea) || !(f.tgt == Fa) || !(e.src == f.src)) fail(Errc::ShapeMismatch, "maps do not form a roof");
    if (!is_chain_map(e) || !is_chain_map(f)) fail(Errc::InvalidArgument, "not chain maps");
    if (!is_qis(e) || !is_qis(f)) fail(Errc::NotQis, "refinement needs quasi-isomorphisms");
    const FreeComplex& A = e.src;

    ChainMap ep = positive_part(e), fp = positive_part(f);
    IsotropicReduction zE = make_reduction(E, ep, true);
    IsotropicReduction zF = make_reduction(F, fp, true);

    ChainMap thE = compose(dual(e), compose(E.sd.theta(), e));
    ChainMap thF = compose(dual(f), compose(F.sd.theta(), f));
    auto h = homotopy_between(thE, thF);
    if (!h) fail(Errc::NoHomotopy, "pulled-back forms are not homotopic");
    Homotopy hs = hscale(make_rat(1, 2), hadd(*h, dual(*h)));
    if (!check_homotopy(thE, thF, hs)) fail(Errc::Internal, "symmetrized homotopy fails");
    Splice sE = splice(thE), sF = splice(thF);
    HomotopyIso al = homotopy_iso(sE, sF, thE, thF, hs);

    // G_X -> S_X through j: A -> A_{x+}
    auto to_s = [&](const IsotropicReduction& z, const ChainMap& x, const ChainMap& xp, const Representative& X,
                    const Splice& sX) {
        Splice sp = splice_truncated(xp);
        Mat j0 = splice_coords(sp, vstack(x.at(0), A.d(0)));
        ChainMap th1 = compose(dual(z.e), compose(X.sd.theta(), z.e));
        Splice g1 = splice(th1);
        Mat m0 = push_degree0(g1, sX, j0.transpose(), A.rank(1));
        ChainMap phi = identity_off_zero(z.source.sd.assembled(), sX.af, m0);
        if (!is_chain_map(phi) || !is_degreewise_iso(phi)) fail(Errc::Internal, "comparison with the direct splice");
        ChainMap j{A, z.mid, {}};
        auto [lo, hi] = span_of(A, z.mid);
        for (int i = lo; i <= hi; ++i) j.comps[i] = i < 0 ? x.at(i) : i == 0 ? j0 : Mat::identity(A.rank(i));
        return std::pair{phi, j};
    };
    auto [phiE, jE] = to_s(zE, e, ep, E, sE);
    auto [phiF, jF] = to_s(zF, f, fp, F, sF);
    (void)jF;
    ChainMap psi = compose(inverse_iso(phiE), compose(inverse_iso(al.alpha), phiF));
    psi.src = zF.source.sd.assembled();
    psi.tgt = zE.source.sd.assembled();

    Refinement out;
    out.to_E = zE;
    out.to_F = zF;
    out.to_F.source = zE.source;
    out.to_F.f = compose(psi, zF.f);
    if (E.has_alpha && maps_equal(e, E.alpha)) {
        ChainMap ag = compose(zE.f, jE);
        if (maps_equal(compose(dual(ag), compose(zE.source.sd.theta(), ag)), E.ref.theta)) {
            out.to_E.source.alpha = ag;
            out.to_E.source.has_alpha = true;
            out.to_F.source = out.to_E.source;
        }
    }
    out.G = out.to_E.source;
    if (!validate_reduction(out.to_E).ok() || !validate_reduction(out.to_F).ok())
        fail(Errc::Internal, "refinement reductions do not validate");
    return out;
}

IsotropicReduction specialize(const ReductionFamily& fam, const Rat& t) {
    IsotropicReduction r;
    r.source = fam.source;
    r.target = fam.target;
    r.mid = specialize(fam.mid, t);
    r.f = specialize(fam.f, t);
    r.e = specialize(fam.e, t);
    r.f.src = r.e.src = r.mid;
    r.f.tgt = fam.source.sd.assembled();
    r.e.tgt = fam.target.sd.assembled();
    r.generalized = fam.generalized;
    return r;
}

namespace {

// f(t) for rational t, one matrix list per sample; nullopt where f is undefined
using Sampler = std::function<std::optional<std::vector<Mat>>(const Rat&)>;

// Coefficients of the polynomial matrices through the samples, with the degree found by doubling.
std::vector<TMat> interpolate(const Sampler& f, const std::vector<Rat>& checks) {
    std::map<Rat, std::vector<Mat>> cache;
    auto get = [&](const Rat& t) -> const std::vector<Mat>* {
        auto it = cache.find(t);
        if (it == cache.end()) {
            auto v = f(t);
            if (!v) return nullptr;
            it = cache.emplace(t, std::move(*v)).first;
        }
        return &it->second;
    };
    for (int n = 4; n <= 64; n *= 2) {
        std::vector<Rat> nodes;
        std::vector<const std::vector<Mat>*> vals;
        for (int j = 0; (int)nodes.size() < n; ++j) {
            if (j > 4 * n + 20) fail(Errc::Internal, "too many undefined sample points");
            if (auto v = get(Rat(j))) {
                nodes.push_back(Rat(j));
                vals.push_back(v);
            }
        }
        Mat V(n, n);
        for (int j = 0; j < n; ++j) {
            Rat p = 1;
            for (int k = 0; k < n; ++k, p *= nodes[j]) V(j, k) = p;
        }
        Mat Vinv = inverse_or_throw(V);
        std::vector<TMat> out;
        for (size_t m = 0; m < vals[0]->size(); ++m) {
            const Mat& shape = (*vals[0])[m];
            std::vector<Mat> coeffs(n, Mat(shape.rows(), shape.cols()));
            for (int k = 0; k < n; ++k)
                for (int j = 0; j < n; ++j)
                    if (Vinv(k, j) != 0) coeffs[k] += Vinv(k, j) * (*vals[j])[m];
            out.push_back(TMat::from_coeffs(shape.rows(), shape.cols(), coeffs));
        }
        bool ok = true;
        for (const Rat& t : checks) {
            auto v = get(t);
            if (!v) continue;
            for (size_t m = 0; m < out.size() && ok; ++m) ok = out[m].at(t) == (*v)[m];
            if (!ok) break;
        }
        if (ok) return out;
    }
    fail(Errc::Internal, "family is not polynomial of low degree");
}

}  // namespace

Connection connect_reductions(const IsotropicReduction& xi0, const IsotropicReduction& xi1) {
    if (!sd_equal(xi0.source.sd, xi1.source.sd) || !sd_equal(xi0.target.sd, xi1.target.sd))
        fail(Errc::Mismatch, "reductions have different endpoints");
    const Representative& F = xi0.source;
    const Representative& E = xi0.target;
    FreeComplex Fa = F.sd.assembled(), Ea = E.sd.assembled();
    const FreeComplex& Fp = F.sd.pos;

    auto plus_of = [&](const IsotropicReduction& xi) {
        ChainMap m{Fp, Ea, {}};
        if (!Fp.empty_range())
            for (int i = 1; i <= Fp.hi(); ++i) m.comps[i] = xi.e.at(i) * inverse_or_throw(xi.f.at(i));
        return m;
    };
    ChainMap b0 = plus_of(xi0), b1 = plus_of(xi1);
    auto h = homotopy_between(b1, b0);
    if (!h) fail(Errc::NoHomotopy, "positive parts of the two reductions are not homotopic");

    ChainMap incl{Fp, Fa, {}};
    if (!Fp.empty_range())
        for (int i = 1; i <= Fp.hi(); ++i) incl.comps[i] = Mat::identity(Fp.rank(i));

    Connection out;
    out.upsilon = make_reduction(F, incl, false);
    out.at0 = compose_reductions(out.upsilon, xi0);
    out.at1 = compose_reductions(out.upsilon, xi1);
    const Representative& G = out.upsilon.source;
    FreeComplex Ga = G.sd.assembled();

    IsotropicReduction r0 = make_reduction(E, b0, true);
    IsotropicReduction r1 = make_reduction(E, b1, true);
    const FreeComplex& A0 = r0.mid;
    Splice s0 = splice_truncated(b0);
    int e0 = Ea.rank(0), a1 = A0.rank(1), r = A0.rank(0);

    // phi_i: G_i -> G with phi_i . m_i = (xi_i . upsilon).f
    auto phi_of = [&](const IsotropicReduction& ri, const IsotropicReduction& ci) {
        auto x = solve_linear(ri.f.at(0).transpose(), ci.f.at(0).transpose());
        if (!x) fail(Errc::Internal, "no comparison G_i -> G");
        ChainMap phi = identity_off_zero(ri.source.sd.assembled(), Ga, x->transpose());
        if (!is_chain_map(phi) || !maps_equal(compose(phi, ri.f), ci.f))
            fail(Errc::Internal, "comparison G_i -> G fails");
        return phi;
    };
    ChainMap phi0 = phi_of(r0, out.at0), phi1 = phi_of(r1, out.at1);
    ChainMap Phi1 = homotopy_reduction_iso(E, b0, b1, *h);
    ChainMap X = compose(phi1, compose(Phi1, inverse_iso(phi0)));
    ChainMap id = identity_map(Ga);
    // X is unipotent with (X - 1)^3 = 0 when it is homotopic to the identity; exp(t log X) stays isometric
    Mat N = X.at(0) - Mat::identity(Ga.rank(0));
    bool off_zero = true;
    for (auto& [i, m] : X.comps)
        if (i != 0) off_zero = off_zero && m == Mat::identity(Ga.rank(i));
    bool unipotent = off_zero && (N * N * N).is_zero();
    Mat M = N - make_rat(1, 2) * (N * N);
    auto psi_at = [&](const Rat& t) {
        if (!unipotent) return add(scale(t, X), scale(Rat(1 - t), id));
        Mat m0 = Mat::identity(Ga.rank(0)) + t * M + Rat(t * t / 2) * (M * M);
        return identity_off_zero(Ga, Ga, m0);
    };

    // T_t: A_{b0} -> A_{bt}
    auto T_at = [&](const Rat& t, const Splice& st) {
        Mat U = block2(Mat::identity(e0), t * h->at(1), Mat(a1, e0), Mat::identity(a1));
        return identity_off_zero(A0, st.af, splice_coords(st, U * s0.kernel));
    };
    Mat Rinv = inverse_or_throw(T_at(Rat(1), splice_truncated(b1)).at(0));
    Rat detR = 1 / det(Rinv);
    // middle gauge: G0(t) = (1-t) + t R^{-1} in degree 0, c(t) = det G0(t) ((1-t) + t det R) below
    auto gauge = [&](const Rat& t) -> std::optional<std::pair<Mat, Rat>> {
        Mat g0 = Rat(1 - t) * Mat::identity(r) + t * Rinv;
        Rat c = det(g0) * ((1 - t) + t * detR);
        if (c == 0) return std::nullopt;
        return std::pair{g0, c};
    };

    int lo = A0.empty_range() ? 0 : A0.lo(), hi = A0.empty_range() ? 0 : A0.hi();
    // layout: mid d(lo..hi-1), then f and e in degrees lo..hi
    Sampler sample = [&](const Rat& t) -> std::optional<std::vector<Mat>> {
        auto gg = gauge(t);
        if (!gg) return std::nullopt;
        auto& [g0, c] = *gg;
        ChainMap bt = add(b0, scale(t, homotopy_boundary(*h)));
        IsotropicReduction rt = make_reduction(E, bt, true);
        ChainMap Phit = homotopy_reduction_iso(E, b0, bt, hscale(t, *h));
        ChainMap T = T_at(t, splice_truncated(bt));
        ChainMap g = compose(psi_at(t), compose(phi0, compose(inverse_iso(Phit), compose(rt.f, T))));
        ChainMap e = compose(rt.e, T);
        auto G = [&](int i) { return i == 0 ? g0 : i < 0 ? c * Mat::identity(A0.rank(i)) : Mat::identity(A0.rank(i)); };
        std::vector<Mat> v;
        for (int i = lo; i < hi; ++i) v.push_back(inverse_or_throw(G(i + 1)) * A0.d(i) * G(i));
        for (int i = lo; i <= hi; ++i) v.push_back(g.at(i) * G(i));
        for (int i = lo; i <= hi; ++i) v.push_back(e.at(i) * G(i));
        return v;
    };
    std::vector<Rat> extra{make_rat(1, 3), make_rat(-2, 5), make_rat(7, 2), make_rat(-13, 3)};
    std::vector<TMat> coeffs = interpolate(sample, extra);

    ReductionFamily& fam = out.family;
    fam.source = G;
    fam.target = E;
    fam.mid.lo = lo;
    size_t k = 0;
    if (!A0.empty_range()) {
        for (int i = lo; i <= hi; ++i) fam.mid.ranks.push_back(A0.rank(i));
        for (int i = lo; i < hi; ++i) fam.mid.diffs.push_back(coeffs[k++]);
    }
    fam.f = PolyChainMap{fam.mid, tensor_with_ring(Ga), {}};
    fam.e = PolyChainMap{fam.mid, tensor_with_ring(Ea), {}};
    if (!A0.empty_range()) {
        for (int i = lo; i <= hi; ++i) fam.f.comps[i] = coeffs[k++];
        for (int i = lo; i <= hi; ++i) fam.e.comps[i] = coeffs[k++];
    }
    fam.generalized = true;
    if (!is_complex(fam.mid) || !is_chain_map(fam.f) || !is_chain_map(fam.e))
        fail(Errc::Internal, "family is not a chain map over Q[t]");

    std::vector<Rat> checks{Rat(0), Rat(1), make_rat(1, 2), make_rat(-3, 7), make_rat(5, 3), Rat(-2), make_rat(9, 4)};
    for (const Rat& t : checks) {
        out.psi_invertible.emplace_back(t, is_degreewise_iso(psi_at(t)));
        IsotropicReduction spec = specialize(fam, t);
        out.valid_at.emplace_back(t, validate_reduction(spec).ok());
    }
    return out;
}

Rat det_q(const Mat& Q) {
    int n = Q.rows();
    Rat d = det(Q);
    return (n * (n - 1) / 2) % 2 ? Rat(-d) : d;
}

bool is_orientation(const Mat& Q, const Rat& o) { return o * o * det_q(Q) == 1; }

Rat reduce_orientation(const IsotropicData& d, const Rat& o) {
    int k = d.K.cols();
    Mat L = solve_or_throw(d.K.transpose() * d.Q, Mat::identity(k), "dual basis for K");
    std::vector<int> rev;
    for (int j = k - 1; j >= 0; --j) rev.push_back(j);
    Mat B = hstack(hstack(d.complement, d.K), L.select_cols(rev));
    return o / det(B);
}

Rat orientation_transfer(const IsotropicReduction& r, const Rat& o) {
    const Mat& Q = r.target.sd.Q;
    if (!is_orientation(Q, o)) fail(Errc::NotAnOrientation, "o^2 det(q) != 1");
    PairMorphism pm = extract_pair_morphism(r);
    IsotropicData d = isotropic_data(Q, pm.K);
    Rat ob = reduce_orientation(d, o);
    if (!is_orientation(d.form, ob)) fail(Errc::Internal, "reduced orientation fails the condition");
    Rat of = ob / det(pm.qIso);
    if (!is_orientation(r.source.sd.Q, of)) fail(Errc::Internal, "transferred orientation fails the condition");
    return of;
}

}  // namespace quadcx
