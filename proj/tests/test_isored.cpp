#include <doctest.h>

#include "quadcx/gen.hpp"
#include "quadcx/isored.hpp"

using namespace quadcx;

namespace {

Representative hyperbolic2() {
    return trivial_representative(SelfDualComplex{Mat{{0, 1}, {1, 0}}, FreeComplex(), Mat(0, 2)});
}

// random self-dual E and an admissible reduction onto it
struct Drawn {
    Representative E;
    IsotropicReduction r;
};

Drawn draw(Gen& g, bool need_k = false) {
    for (;;) {
        SelfDualComplex sd = g.self_dual(4, 2);
        Representative E = trivial_representative(sd);
        ChainMap ep = g.positive_lift(sd);
        IsotropicReduction r = make_reduction(E, ep);
        int k = kernel_basis(r.e.at(0).transpose() * sd.Q).cols();
        if (2 * k >= sd.middle_rank()) continue;
        if (need_k && k == 0) continue;
        return {E, r};
    }
}

// xi: G ~> F and zeta: F ~> E with F the source of zeta
std::pair<IsotropicReduction, IsotropicReduction> draw_pair(Gen& g) {
    for (;;) {
        Drawn d = draw(g);
        const Representative& F = d.r.source;
        if (F.sd.middle_rank() == 0) continue;
        IsotropicReduction xi = make_reduction(F, g.positive_lift(F.sd));
        int k = kernel_basis(xi.e.at(0).transpose() * F.sd.Q).cols();
        if (2 * k >= F.sd.middle_rank()) continue;
        return {xi, d.r};
    }
}

ChainMap positive_part_of(const IsotropicReduction& r) {
    const FreeComplex& Fp = r.source.sd.pos;
    ChainMap m{Fp, r.target.sd.assembled(), {}};
    if (!Fp.empty_range())
        for (int i = 1; i <= Fp.hi(); ++i) m.comps[i] = r.e.at(i) * inverse_or_throw(r.f.at(i));
    return m;
}

Mat hyperbolic(int k) {
    Mat m(2 * k, 2 * k);
    for (int i = 0; i < k; ++i) m(i, k + i) = m(k + i, i) = 1;
    return m;
}

}  // namespace

TEST_CASE("zero lift into a complex without positive part is isomorphism-shaped") {
    Representative E = hyperbolic2();
    FreeComplex empty;
    ChainMap ep{empty, E.sd.assembled(), {}};
    IsotropicReduction r = make_reduction(E, ep);
    CHECK(validate_reduction(r).ok());
    CHECK(r.source.sd.Q == E.sd.Q);
    CHECK(is_degreewise_iso(r.f));
    CHECK(is_degreewise_iso(r.e));
    PairMorphism pm = extract_pair_morphism(r);
    CHECK(pm.K.cols() == 0);
    // F^0 sits in the dual coordinates, so the comparison is Q^{-1}
    CHECK(pm.qIso == Mat{{0, 1}, {1, 0}});
    CHECK(pm.phi == 1);
}

TEST_CASE("validate flags a broken square and skips the rank condition when generalized") {
    Representative E = hyperbolic2();
    IsotropicReduction r = identity_reduction(E);
    CHECK(validate_reduction(r).ok());
    r.f.comps[0] = Mat{{2, 0}, {0, 1}};
    ReductionReport rep = validate_reduction(r);
    CHECK_FALSE(rep.square);
    CHECK(rep.f_chain);

    // A = [Q -> Q] in degrees 1, 2 mapped by zero
    SelfDualComplex sd{Mat{{0, 1}, {1, 0}}, FreeComplex(1, {1}, {}), Mat{{1, 0}}};
    Representative E2 = trivial_representative(sd);
    FreeComplex A(1, {1, 1}, {Mat{{1}}});
    ChainMap zero{A, E2.sd.assembled(), {}};
    // image of a is all of E^1, so h^1(E) = 0 and the zero map is admissible
    IsotropicReduction g = make_reduction(E2, zero, true);
    CHECK(validate_reduction(g).ok());
}

TEST_CASE("padding hyperbolic Q^2 by [Q -> Q] recovers the unpadded complex") {
    Representative E = hyperbolic2();
    FreeComplex K(0, {1, 1}, {Mat{{1}}});
    IsotropicReduction p = pad_with_acyclic(E, K);
    CHECK(validate_reduction(p).ok());
    // E + K + K* in degree 0 with the hyperbolic form on K + K*
    CHECK(p.target.sd.Q == Mat{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
    CHECK(p.target.sd.a == Mat{{0, 0, 1, 0}});
    CHECK(p.mid.rank(0) == 3);
    CHECK(p.mid.rank(-1) == 1);
    CHECK(p.f.at(0) == Mat{{1, 0, 0}, {0, 1, 0}});
    CHECK(p.e.at(0) == Mat{{1, 0, 0}, {0, 1, 0}, {0, 0, 0}, {0, 0, 1}});
    CHECK(p.e.at(-1) == Mat{{1}});
    CHECK(p.e.at(1) == Mat(1, 0));

    // reducing the padded complex along the zero lift gives back E
    FreeComplex none;
    ChainMap lift{none, p.target.sd.assembled(), {}};
    IsotropicReduction back = make_reduction(p.target, lift);
    CHECK(validate_reduction(back).ok());
    CHECK(back.source.sd.middle_rank() == 2);
    CHECK(det_q(back.source.sd.Q) == det_q(E.sd.Q));

    PairMorphism pm = extract_pair_morphism(p);
    CHECK(pm.K == Mat{{0}, {0}, {0}, {1}});
    CHECK(pm.qIso == Mat::identity(2));
    CHECK((pm.phi == 1 || pm.phi == -1));
}

TEST_CASE("padding by zero is the identity") {
    Gen g(301);
    Drawn d = draw(g);
    IsotropicReduction p = pad_with_acyclic(d.E, FreeComplex());
    CHECK(sd_equal(p.target.sd, d.E.sd));
    CHECK(maps_equal(p.f, identity_map(d.E.sd.assembled())));
    CHECK(maps_equal(p.e, identity_map(d.E.sd.assembled())));
}

TEST_CASE("padding errors") {
    Representative E = hyperbolic2();
    CHECK_THROWS_AS(pad_with_acyclic(E, FreeComplex::single(0, 1)), Error);
    try {
        pad_with_acyclic(E, FreeComplex::single(1, 1));
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotAcyclic);
    }
    try {
        pad_with_acyclic(E, FreeComplex(-1, {1, 1}, {Mat{{1}}}));
    } catch (const Error& e) {
        CHECK(e.code() == Errc::PreconditionFailed);
    }
}

TEST_CASE("random paddings validate and compose to the double padding") {
    Gen g(302);
    for (int t = 0; t < 10; ++t) {
        Drawn d = draw(g);
        FreeComplex K1 = g.acyclic(0, 2), K2 = g.acyclic(0, 2);
        IsotropicReduction p1 = pad_with_acyclic(d.E, K1);
        CHECK(validate_reduction(p1).ok());
        IsotropicReduction p2 = pad_with_acyclic(p1.target, K2);
        IsotropicReduction both = compose_reductions(p1, p2);
        CHECK(validate_reduction(both).ok());
        // K^perp/K of the composite is E again
        PairMorphism pm = extract_pair_morphism(both);
        CHECK(pm.K.cols() == K1.rank(0) + K2.rank(0));
        CHECK(pair_equal(pm, pair_compose(p2.target.sd.Q, extract_pair_morphism(p2), extract_pair_morphism(p1))));
        CHECK(pm.qIso.transpose() * pm.form * pm.qIso == d.E.sd.Q);
    }
}

TEST_CASE("cone of the identity padding validates") {
    Gen g(303);
    for (int t = 0; t < 5; ++t) {
        Drawn d = draw(g);
        CHECK(validate_reduction(cone_identity_padding(d.E)).ok());
    }
}

TEST_CASE("random reductions validate and satisfy the isotropy invariants") {
    Gen g(304);
    for (int t = 0; t < 25; ++t) {
        Drawn d = draw(g);
        ReductionReport rep = validate_reduction(d.r);
        CHECK(rep.ok());
        PairMorphism pm = extract_pair_morphism(d.r);
        const Mat& Q = d.E.sd.Q;
        CHECK((pm.K.transpose() * Q * pm.K).is_zero());
        CHECK(d.r.source.sd.middle_rank() == Q.rows() - 2 * pm.K.cols());
        CHECK(pm.qIso.transpose() * pm.form * pm.qIso == d.r.source.sd.Q);
        CHECK(pm.phi != 0);
    }
}

TEST_CASE("rank condition failure is reported") {
    // two copies of the same class in A^1 with no A^2
    SelfDualComplex sd{Mat{{0, 1}, {1, 0}}, FreeComplex(1, {1}, {}), Mat{{0, 0}}};
    Representative E = trivial_representative(sd);
    FreeComplex A = FreeComplex::single(1, 2);
    ChainMap ep{A, E.sd.assembled(), {{1, Mat{{1, 1}}}}};
    try {
        make_reduction(E, ep);
        FAIL("expected RankCondition");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::RankCondition);
    }
    IsotropicReduction g = make_reduction(E, ep, true);
    ReductionReport rep = validate_reduction(g);
    CHECK(rep.ok());
    CHECK_FALSE(rank_condition(g));
}

TEST_CASE("half-rank isotropic subspaces are rejected") {
    // Q^2 hyperbolic with E^1 = Q and a = (1, 0); the zero lift leaves ker a = K^perp = K of rank 1
    SelfDualComplex sd{Mat{{0, 1}, {1, 0}}, FreeComplex(1, {1}, {}), Mat{{1, 0}}};
    Representative E = trivial_representative(sd);
    FreeComplex A;
    ChainMap ep{A, E.sd.assembled(), {}};
    IsotropicReduction r = make_reduction(E, ep);
    CHECK(validate_reduction(r).ok());
    CHECK(r.source.sd.middle_rank() == 0);
    try {
        extract_pair_morphism(r);
        FAIL("expected HalfRankIsotropic");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::HalfRankIsotropic);
    }
}

TEST_CASE("composition diagram commutes and composing with the identity changes nothing") {
    Gen g(305);
    for (int t = 0; t < 15; ++t) {
        auto [xi, zeta] = draw_pair(g);
        IsotropicReduction c = compose_reductions(xi, zeta);
        CHECK(validate_reduction(c).ok());
        CHECK_FALSE(c.generalized);

        IsotropicReduction left = compose_reductions(identity_reduction(zeta.source), zeta);
        CHECK(reductions_equivalent(left, zeta).has_value());
        CHECK(pair_equal(extract_pair_morphism(left), extract_pair_morphism(zeta)));
        IsotropicReduction right = compose_reductions(zeta, identity_reduction(zeta.target));
        CHECK(reductions_equivalent(right, zeta).has_value());
    }
}

TEST_CASE("composition rejects mismatched middles") {
    Gen g(306);
    Drawn a = draw(g), b = draw(g);
    if (!sd_equal(a.r.target.sd, b.r.source.sd)) {
        try {
            compose_reductions(a.r, b.r);
            FAIL("expected Mismatch");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::Mismatch);
        }
    }
}

TEST_CASE("extraction is functorial") {
    Gen g(307);
    for (int t = 0; t < 25; ++t) {
        auto [xi, zeta] = draw_pair(g);
        IsotropicReduction c = compose_reductions(xi, zeta);
        int k = kernel_basis(c.e.at(0).transpose() * zeta.target.sd.Q).cols();
        if (2 * k >= zeta.target.sd.middle_rank()) continue;
        PairMorphism direct = extract_pair_morphism(c);
        PairMorphism composed = pair_compose(zeta.target.sd.Q, extract_pair_morphism(zeta), extract_pair_morphism(xi));
        CHECK(direct.K == composed.K);
        CHECK(direct.qIso == composed.qIso);
        CHECK(direct.phi == composed.phi);
    }
}

TEST_CASE("extraction is associative on triples") {
    Gen g(308);
    int done = 0;
    for (int t = 0; t < 40 && done < 8; ++t) {
        auto [xi, zeta] = draw_pair(g);
        const Representative& G = xi.source;
        if (G.sd.middle_rank() == 0) continue;
        IsotropicReduction chi = make_reduction(G, g.positive_lift(G.sd));
        int k = kernel_basis(chi.e.at(0).transpose() * G.sd.Q).cols();
        if (2 * k >= G.sd.middle_rank()) continue;
        auto good = [](const IsotropicReduction& r) {
            int kk = kernel_basis(r.e.at(0).transpose() * r.target.sd.Q).cols();
            return 2 * kk < r.target.sd.middle_rank();
        };
        IsotropicReduction a = compose_reductions(compose_reductions(chi, xi), zeta);
        IsotropicReduction b = compose_reductions(chi, compose_reductions(xi, zeta));
        if (!good(a) || !good(b)) continue;
        CHECK(pair_equal(extract_pair_morphism(a), extract_pair_morphism(b)));
        ++done;
    }
    CHECK(done > 0);
}

TEST_CASE("generalized reductions become genuine after padding") {
    Gen g(309);
    for (int t = 0; t < 10; ++t) {
        Drawn d = draw(g);
        IsotropicReduction z = d.r;
        z.generalized = true;
        IsotropicReduction p = genuine_from_generalized(z);
        CHECK(validate_reduction(p).ok());
        CHECK_FALSE(p.generalized);
        int ne = d.E.sd.middle_rank(), r1 = z.source.sd.pos.rank(1), na = z.mid.rank(0);
        Mat e0 = p.e.at(0);
        // degree 0 rows: (e_0, 0), (f_1 d, 0), (0, id)
        CHECK(e0.block(0, 0, ne, na) == z.e.at(0));
        CHECK(e0.block(ne, 0, r1, na) == z.f.at(1) * z.mid.d(0));
        CHECK(e0.block(ne + r1, na, r1, r1) == Mat::identity(r1));
        Mat e1 = p.e.at(1);
        CHECK(e1.block(z.target.sd.assembled().rank(1), 0, r1, z.mid.rank(1)) == z.f.at(1));
    }
}

TEST_CASE("generalized reductions from non-injective lifts become genuine") {
    SelfDualComplex sd{Mat{{0, 1}, {1, 0}}, FreeComplex(1, {1}, {}), Mat{{0, 0}}};
    Representative E = trivial_representative(sd);
    FreeComplex A = FreeComplex::single(1, 2);
    ChainMap ep{A, E.sd.assembled(), {{1, Mat{{1, 1}}}}};
    IsotropicReduction z = make_reduction(E, ep, true);
    IsotropicReduction p = genuine_from_generalized(z);
    CHECK(validate_reduction(p).ok());
    CHECK(rank_condition(p));
}

TEST_CASE("homotopy reduction isomorphism") {
    Gen g(310);
    for (int t = 0; t < 15; ++t) {
        SelfDualComplex sd = g.self_dual(4, 2);
        Representative E = trivial_representative(sd);
        ChainMap a = g.positive_lift(sd);
        Homotopy zero = zero_homotopy(a.src, a.tgt);
        ChainMap id = homotopy_reduction_iso(E, a, a, zero);
        IsotropicReduction ra = make_reduction(E, a, true);
        CHECK(maps_equal(id, identity_map(ra.source.sd.assembled())));

        Homotopy h = g.homotopy(a.src, a.tgt);
        ChainMap b = add(a, homotopy_boundary(h));
        if (truncated_splice_defect(b)) continue;
        ChainMap beta = homotopy_reduction_iso(E, a, b, h);
        IsotropicReduction rb = make_reduction(E, b, true);
        CHECK(is_degreewise_iso(beta));
        ChainMap back = compose(dual(beta), compose(rb.source.sd.theta(), beta));
        CHECK(maps_equal(back, ra.source.sd.theta()));
        for (int i = 1; i <= ra.source.sd.assembled().hi(); ++i)
            CHECK(beta.at(i) == Mat::identity(ra.source.sd.assembled().rank(i)));
    }
}

TEST_CASE("homotopy reduction isomorphism rejects a wrong homotopy") {
    Gen g(311);
    for (;;) {
        SelfDualComplex sd = g.self_dual(4, 2);
        ChainMap a = g.positive_lift(sd);
        Homotopy h = g.homotopy(a.src, a.tgt);
        if (homotopy_boundary(h).comps.empty()) continue;
        bool nonzero = false;
        for (auto& [i, m] : homotopy_boundary(h).comps) nonzero |= !m.is_zero();
        if (!nonzero) continue;
        try {
            homotopy_reduction_iso(trivial_representative(sd), a, a, h);
            FAIL("expected HomotopyIdentityFails");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::HomotopyIdentityFails);
        }
        break;
    }
}

TEST_CASE("common refinement of a representative with itself") {
    Gen g(312);
    for (int t = 0; t < 8; ++t) {
        SelfDualComplex sd = g.self_dual(4, 2);
        QuadComplex q = g.quad_around(sd);
        SelfDualRep s = self_dual_rep(symmetrize(q));
        Refinement ref = common_refinement(s.rep, s.rep);
        CHECK(validate_reduction(ref.to_E).ok());
        CHECK(validate_reduction(ref.to_F).ok());
        CHECK(reductions_equivalent(ref.to_E, ref.to_F).has_value());
    }
}

TEST_CASE("common refinement of a representative and its padding") {
    Gen g(313);
    for (int t = 0; t < 8; ++t) {
        SelfDualComplex sd = g.self_dual(4, 2);
        QuadComplex q = g.quad_around(sd);
        SelfDualRep s = self_dual_rep(symmetrize(q));
        IsotropicReduction p = pad_with_acyclic(s.rep, g.acyclic(0, 2));
        REQUIRE(p.target.has_alpha);
        Refinement ref = common_refinement(s.rep, p.target);
        CHECK(validate_reduction(ref.to_E).ok());
        CHECK(validate_reduction(ref.to_F).ok());
        CHECK(sd_equal(ref.to_E.target.sd, s.rep.sd));
        CHECK(sd_equal(ref.to_F.target.sd, p.target.sd));
    }
}

TEST_CASE("common refinement of two independent representatives") {
    Gen g(314);
    for (int t = 0; t < 8; ++t) {
        SelfDualComplex sd = g.self_dual(4, 2);
        QuadComplex q = symmetrize(g.quad_around(sd));
        // second representative through a conjugated, homotopy-perturbed theta
        ChainMap c = g.conjugation(q.carrier);
        ChainMap ci = inverse_iso(c);
        QuadComplex q2{c.tgt, compose(dual(ci), compose(q.theta, ci))};
        SelfDualRep s1 = self_dual_rep(q);
        SelfDualRep s2 = self_dual_rep(q2);
        Representative r2 = s2.rep;
        r2.ref = q;
        r2.alpha = compose(s2.rep.alpha, c);
        Refinement ref = common_refinement(s1.rep, r2);
        CHECK(validate_reduction(ref.to_E).ok());
        CHECK(validate_reduction(ref.to_F).ok());
    }
}

bool same_reduction(const IsotropicReduction& a, const IsotropicReduction& b) {
    return a.mid == b.mid && maps_equal(a.f, b.f) && maps_equal(a.e, b.e) && sd_equal(a.source.sd, b.source.sd) &&
           sd_equal(a.target.sd, b.target.sd);
}

TEST_CASE("connecting a reduction to itself gives a constant family") {
    Gen g(315);
    for (int t = 0; t < 5; ++t) {
        Drawn d = draw(g);
        Connection c = connect_reductions(d.r, d.r);
        CHECK(same_reduction(specialize(c.family, 0), c.at0));
        CHECK(same_reduction(specialize(c.family, 1), c.at1));
        CHECK(same_reduction(specialize(c.family, make_rat(3, 7)), c.at0));
    }
}

TEST_CASE("connecting two homotopic reductions") {
    Gen g(316);
    int done = 0;
    for (int t = 0; t < 40 && done < 8; ++t) {
        Drawn d = draw(g);
        const IsotropicReduction& xi0 = d.r;
        ChainMap b0 = positive_part_of(xi0);
        Homotopy h = g.homotopy(b0.src, b0.tgt);
        ChainMap b1 = add(b0, homotopy_boundary(h));
        if (truncated_splice_defect(b1)) continue;
        IsotropicReduction r1 = make_reduction(d.E, b1, true);
        if (!rank_condition(r1)) continue;
        ChainMap beta = homotopy_reduction_iso(d.E, b0, b1, h);
        IsotropicReduction xi1 = r1;
        xi1.source = xi0.source;
        xi1.f = compose(inverse_iso(beta), r1.f);
        xi1.f.tgt = xi0.source.sd.assembled();
        xi1.generalized = false;
        REQUIRE(validate_reduction(xi1).ok());

        Connection c = connect_reductions(xi0, xi1);
        CHECK(validate_reduction(c.upsilon).ok());
        CHECK(same_reduction(specialize(c.family, 0), c.at0));
        CHECK(same_reduction(specialize(c.family, 1), c.at1));
        CHECK(is_complex(c.family.mid));
        CHECK(is_chain_map(c.family.f));
        CHECK(is_chain_map(c.family.e));
        for (auto& [tt, ok] : c.psi_invertible)
            if (tt == 0 || tt == 1) CHECK(ok);
        for (auto& [tt, ok] : c.valid_at) {
            INFO("t = " << rat_str(tt));
            CHECK(ok);
        }
        ++done;
    }
    CHECK(done > 0);
}

TEST_CASE("orientations") {
    CHECK(det_q(Mat{{0, 1}, {1, 0}}) == 1);
    CHECK(is_orientation(Mat{{0, 1}, {1, 0}}, 1));
    CHECK(is_orientation(Mat{{0, 1}, {1, 0}}, -1));
    CHECK_FALSE(is_orientation(Mat{{0, 1}, {1, 0}}, 2));
    CHECK(det_q(hyperbolic(2)) == 1);

    // Q^2 along rank-1 K: rank-0 quotient, orientation forced to be 1
    IsotropicData d = isotropic_data(Mat{{0, 1}, {1, 0}}, Mat{{1}, {0}});
    CHECK(d.complement.cols() == 0);
    CHECK(reduce_orientation(d, 1) * reduce_orientation(d, 1) == 1);

    Gen g(316);
    for (int t = 0; t < 10; ++t) {
        Mat G = g.invertible(4);
        Mat Q = G.transpose() * hyperbolic(2) * G;
        Rat o = 1 / det(G);
        REQUIRE(is_orientation(Q, o));
        Mat K = inverse_or_throw(G) * Mat{{1}, {0}, {0}, {0}};
        IsotropicData dd = isotropic_data(Q, K);
        CHECK(is_orientation(dd.form, reduce_orientation(dd, o)));
        CHECK_FALSE(is_orientation(dd.form, 2 * reduce_orientation(dd, o)));
    }
}

TEST_CASE("orientation transfer along reductions") {
    Gen g(317);
    for (int t = 0; t < 15; ++t) {
        Drawn d = draw(g);
        const Mat& Q = d.E.sd.Q;
        if (Q.rows() == 0) continue;
        // o = 1/det(G) for Q = G^T J G
        Rat dq = det_q(Q);
        Rat o = 0;
        for (long p = 1; p < 200 && o == 0; ++p)
            for (long q = 1; q < 200 && o == 0; ++q)
                if (make_rat(p * p, q * q) * dq == 1) o = make_rat(p, q);
        if (o == 0) continue;
        Rat of = orientation_transfer(d.r, o);
        CHECK(is_orientation(d.r.source.sd.Q, of));
    }
    try {
        orientation_transfer(identity_reduction(hyperbolic2()), 3);
        FAIL("expected NotAnOrientation");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotAnOrientation);
    }
    CHECK(orientation_transfer(identity_reduction(hyperbolic2()), -1) == -1);
}

TEST_CASE("phi of a degree-one isomorphism is its determinant") {
    SelfDualComplex sd{Mat{{0, 1}, {1, 0}}, FreeComplex::single(1, 2), Mat(2, 2)};
    Representative E = trivial_representative(sd);
    FreeComplex A = FreeComplex::single(1, 2);
    ChainMap ep{A, E.sd.assembled(), {{1, Mat{{3, 1}, {0, 2}}}}};
    IsotropicReduction r = make_reduction(E, ep);
    PairMorphism pm = extract_pair_morphism(r);
    CHECK(pm.K.cols() == 0);
    CHECK(r.f.at(1) == Mat::identity(2));
    CHECK(pm.phi == 6);
}
