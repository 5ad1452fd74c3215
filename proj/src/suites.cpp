#include "quadcx/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "quadcx/cliffspin.hpp"
#include "quadcx/gen.hpp"
#include "quadcx/isored.hpp"
#include "quadcx/ktheory.hpp"
#include "quadcx/matfac.hpp"
#include "quadcx/simplicial.hpp"

namespace quadcx {

namespace {

class Ctx {
public:
    Ctx(std::string id, std::vector<CaseFailure>& out) : id_(std::move(id)), out_(out) {}
    void check(bool ok, const std::string& cond, const std::string& expected = "true",
               const std::string& actual = "false") {
        if (!ok) out_.push_back({id_, cond, expected, actual});
    }
    template <class T>
    void eq(const T& actual, const T& expected, const std::string& cond) {
        if (!(actual == expected)) out_.push_back({id_, cond, show(expected), show(actual)});
    }

private:
    static std::string show(const Rat& r) { return rat_str(r); }
    static std::string show(int v) { return std::to_string(v); }
    static std::string show(size_t v) { return std::to_string(v); }
    static std::string show(const std::vector<int>& v) {
        std::ostringstream s;
        s << "(";
        for (size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
        s << ")";
        return s.str();
    }
    std::string id_;
    std::vector<CaseFailure>& out_;
};

int max_rank(const FreeComplex& c) {
    int m = 0;
    if (!c.empty_range())
        for (int i = c.lo(); i <= c.hi(); ++i) m = std::max(m, c.rank(i));
    return m;
}

// ---- splicing

void splicing_case(Gen& g, Ctx& c) {
    FreeComplex a;
    ChainMap f;
    do {
        a = g.complex(-3, 3, 1);
        f = g.qis_from(a, -3, 3);
    } while (max_rank(f.tgt) > 4);
    Splice s = splice(f);
    c.check(is_complex(s.af), "d^2 = 0 on A_f");
    c.check(is_chain_map(s.eta_minus) && is_qis(s.eta_minus), "eta- quasi-isomorphism");
    c.check(is_chain_map(s.eta_plus) && is_qis(s.eta_plus), "eta+ quasi-isomorphism");
    c.check(maps_equal(compose(s.eta_plus, s.eta_minus), f), "eta+ eta- = f");
    Splice sd = splice(dual(f));
    ChainMap D = duality_identification(f);
    c.check(is_chain_map(D) && is_degreewise_iso(D), "duality identification is an isomorphism");
    c.check(maps_equal(compose(D, sd.eta_minus), dual(s.eta_plus)), "hexagon, eta- side");
    c.check(maps_equal(compose(dual(s.eta_minus), D), sd.eta_plus), "hexagon, eta+ side");
    c.check(maps_equal(duality_identification(dual(f)), dual(D)), "transpose identity");
}

// ---- self-dual representatives

void selfdual_case(Gen& g, Ctx& c) {
    QuadComplex q = symmetrize(g.quad_around(g.self_dual()));
    c.check(is_symmetric(q.theta), "symmetrized theta symmetric");
    SelfDualRep r = self_dual_rep(q);
    const ChainMap& tp = r.theta_prime;
    bool sym = true;
    if (!tp.src.empty_range())
        for (int i = tp.src.lo(); i <= tp.src.hi(); ++i)
            if (!(tp.at(i).transpose() == tp.at(-i))) sym = false;
    c.check(sym, "theta' self-dual");
    c.check(maps_equal(r.rep.sd.theta(), tp), "theta' is the self-dual structure");
    c.check(maps_equal(compose(dual(r.rep.alpha), compose(tp, r.rep.alpha)), q.theta), "self-dual square");
    c.check(is_qis(r.rep.alpha), "alpha quasi-isomorphism");
}

// ---- isotropic reductions

struct Drawn {
    Representative E;
    IsotropicReduction r;
};

int k_rank(const IsotropicReduction& r) { return kernel_basis(r.e.at(0).transpose() * r.target.sd.Q).cols(); }
bool below_half(const IsotropicReduction& r) { return 2 * k_rank(r) < r.target.sd.middle_rank(); }

Drawn draw_reduction(Gen& g) {
    for (;;) {
        SelfDualComplex sd = g.self_dual(4, 2);
        Representative E = trivial_representative(sd);
        IsotropicReduction r = make_reduction(E, g.positive_lift(sd));
        if (below_half(r)) return {E, r};
    }
}

void isored_case(Gen& g, Ctx& c) {
    Drawn d = draw_reduction(g);
    ReductionReport rep = validate_reduction(d.r);
    c.check(rep.f_iso_positive && rep.e_iso_negative, "condition (i)");
    c.check(rep.rank_condition, "condition (ii)");
    c.check(rep.ok(), "conditions (i)-(iii)");
    PairMorphism pm = extract_pair_morphism(d.r);
    const Mat& Q = d.E.sd.Q;
    int k = pm.K.cols();
    c.check((pm.K.transpose() * Q * pm.K).is_zero(), "K isotropic");
    c.eq(d.r.source.sd.middle_rank(), Q.rows() - 2 * k, "rank F0 = rank E0 - 2 rank K");
    // cone of the positive truncation of e
    FreeComplex top = truncate_below(d.r.mid, 1), tgt = truncate_below(d.E.sd.assembled(), 1);
    ChainMap pos{top, tgt, {}};
    if (!top.empty_range())
        for (int i = top.lo(); i <= top.hi(); ++i) pos.comps[i] = d.r.e.at(i);
    bool conc = is_chain_map(pos);
    for (auto [i, h] : cohomology(cone(pos)))
        if (h != (i == 1 ? k : 0)) conc = false;
    c.check(conc, "cone of the positive truncation has cohomology rank K in degree 1 only");

    // functoriality on the first composable pair drawn
    for (int attempt = 0; attempt < 50; ++attempt) {
        Drawn z = attempt == 0 ? d : draw_reduction(g);
        const Representative& F = z.r.source;
        if (F.sd.middle_rank() == 0) continue;
        IsotropicReduction xi = make_reduction(F, g.positive_lift(F.sd));
        if (!below_half(xi)) continue;
        IsotropicReduction comp = compose_reductions(xi, z.r);
        c.check(validate_reduction(comp).ok(), "composite validates");
        if (!below_half(comp)) continue;
        PairMorphism direct = extract_pair_morphism(comp);
        PairMorphism composed = pair_compose(z.E.sd.Q, extract_pair_morphism(z.r), extract_pair_morphism(xi));
        c.check(pair_equal(direct, composed), "extraction is functorial");
        return;
    }
    c.check(false, "found a composable pair", "found", "none in 50 draws");
}

bool same_reduction(const IsotropicReduction& a, const IsotropicReduction& b) {
    return a.mid == b.mid && maps_equal(a.f, b.f) && maps_equal(a.e, b.e) && sd_equal(a.source.sd, b.source.sd) &&
           sd_equal(a.target.sd, b.target.sd);
}

ChainMap positive_part_of(const IsotropicReduction& r) {
    const FreeComplex& Fp = r.source.sd.pos;
    ChainMap m{Fp, r.target.sd.assembled(), {}};
    if (!Fp.empty_range())
        for (int i = 1; i <= Fp.hi(); ++i) m.comps[i] = r.e.at(i) * inverse_or_throw(r.f.at(i));
    return m;
}

void connectivity_case(Gen& g, Ctx& c) {
    // two representatives of one quadratic complex
    QuadComplex q = symmetrize(g.quad_around(g.self_dual(4, 2)));
    ChainMap conj = g.conjugation(q.carrier);
    ChainMap ci = inverse_iso(conj);
    QuadComplex q2{conj.tgt, compose(dual(ci), compose(q.theta, ci))};
    SelfDualRep s1 = self_dual_rep(q), s2 = self_dual_rep(q2);
    Representative r2 = s2.rep;
    r2.ref = q;
    r2.alpha = compose(s2.rep.alpha, conj);
    Refinement ref = common_refinement(s1.rep, r2);
    c.check(validate_reduction(ref.to_E).ok() && validate_reduction(ref.to_F).ok(), "common refinement");

    // two reductions with homotopic positive parts
    for (int attempt = 0; attempt < 200; ++attempt) {
        Drawn d = draw_reduction(g);
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
        c.check(validate_reduction(xi1).ok(), "transported reduction validates");
        Connection cn = connect_reductions(xi0, xi1);
        c.check(validate_reduction(cn.upsilon).ok(), "upsilon validates");
        c.check(same_reduction(specialize(cn.family, 0), cn.at0), "family at t = 0");
        c.check(same_reduction(specialize(cn.family, 1), cn.at1), "family at t = 1");
        return;
    }
    c.check(false, "found a homotopic pair of reductions", "found", "none in 200 draws");
}

// ---- Clifford

Rat qform(const QuadSpace& s, const Mat& v) { return (v.transpose() * s.Q * v)(0, 0); }

Mat nonisotropic(Gen& g, const QuadSpace& s, int lo, int hi) {
    for (;;) {
        Mat v(s.n, 1);
        for (int i = lo; i < hi; ++i) v(i, 0) = g.small_rat(2);
        if (sgn(qform(s, v)) != 0) return v;
    }
}

void clifford_case(Gen& g, Ctx& c, int index) {
    int n = index % 7;
    QuadSpace s = standard_quadspace(n);
    c.check(action_is_iso(n), "Cl -> End(S) bijective (dim Cl = 2^n)");
    CliffElt w = volume_element(n);
    c.check(w * w == cl_scalar(s, 1), "omega^2 = 1");
    bool anti = true;
    for (int i = 1; i <= n; ++i) {
        CliffElt v = cl_gen(s, i);
        if (!(w * v == (n % 2 ? v * w : make_rat(-1, 1) * (v * w)))) anti = false;
    }
    c.check(anti, "omega (anti)commutes with generators");
    bool rel = true;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (!(cl_gen(s, i) * cl_gen(s, j) + cl_gen(s, j) * cl_gen(s, i) == cl_scalar(s, 2 * s.Q(i - 1, j - 1))))
                rel = false;
    c.check(rel, "Clifford relations");

    int m = g.uniform(1, 7);
    QuadSpace t = standard_quadspace(m);
    CliffElt x = cl_scalar(t, 1);
    Rat norm = 1;
    int len = 2 * g.uniform(1, 2);
    for (int i = 0; i < len; ++i) {
        Mat v = nonisotropic(g, t, 0, m);
        x = x * cl_vector(t, v);
        norm *= qform(t, v);
    }
    c.eq(spinor_norm(x), norm, "spinor norm of a product of vectors");
    c.eq(spinor_norm_via_pairing(x), spinor_norm(x), "spinor norm via pairing");
}

// ---- spin transfer

CliffElt normalizing(Gen& g, int n, int k) {
    QuadSpace s = standard_quadspace(n);
    CliffElt x = cl_scalar(s, g.nonzero_rat(2));
    int steps = g.uniform(1, 4);
    for (int t = 0; t < steps; ++t) {
        int kind = g.uniform(0, 3);
        if (kind == 0 && n == 2 * k) kind = 1;
        if (kind == 0) {
            x = x * cl_vector(s, nonisotropic(g, s, 0, n - k)) * cl_vector(s, nonisotropic(g, s, 0, n - k));
        } else if (kind == 1) {
            int i = g.uniform(1, k);
            CliffElt ef = cl_gen(s, i) * cl_gen(s, n + 1 - i), fe = cl_gen(s, n + 1 - i) * cl_gen(s, i);
            x = x * (make_rat(1, 2) * g.nonzero_rat(3) * ef + make_rat(1, 2) * g.nonzero_rat(3) * fe);
        } else if (kind == 2) {
            int i = g.uniform(1, k);
            Mat b = g.mat(n, 1);
            for (int j = n - k; j < n; ++j) b(j, 0) = 0;
            x = x * (cl_scalar(s, 1) + cl_gen(s, i) * cl_vector(s, b));
        } else if (k >= 2) {
            int i = g.uniform(1, k), j = g.uniform(1, k);
            if (i != j) x = x * (cl_scalar(s, 1) + g.small_rat(2) * cl_gen(s, i) * cl_gen(s, n + 1 - j));
        }
    }
    return x;
}

// eta of the staged reduction over eta of the direct one, in matching bases
std::optional<Rat> staged_scalar(const SpinDatum& d, int k, int j) {
    auto a = reduce_spin_datum(d, k);
    auto b = reduce_spin_datum(a.datum, j);
    auto cc = reduce_spin_datum(d, k + j);
    Mat inc = a.inclusion * b.inclusion;
    if (!same_span(inc, cc.inclusion)) return std::nullopt;
    Mat C = solve_or_throw(inc, cc.inclusion, "change of basis");
    for (size_t i = 0; i < cc.datum.action.size(); ++i)
        if (!(C * cc.datum.action[i] == b.datum.action[i] * C)) return std::nullopt;
    Mat pulled = C.transpose() * b.datum.eta * C;
    // brute force: the unique lambda with pulled = lambda * eta_direct, if any
    std::optional<Rat> lam;
    for (int r = 0; r < pulled.rows(); ++r)
        for (int s = 0; s < pulled.cols(); ++s) {
            const Rat& e = cc.datum.eta(r, s);
            if (e == 0) {
                if (pulled(r, s) != 0) return std::nullopt;
                continue;
            }
            Rat l = pulled(r, s) / e;
            if (lam && *lam != l) return std::nullopt;
            lam = l;
        }
    return lam;
}

Rat pinned_staged_scalar() {
    static const Rat pinned = [] {
        auto l = staged_scalar(standard_spin_datum(6), 1, 1);
        if (!l) fail(Errc::Internal, "staged reduction on (6,1,1) is not a scalar multiple");
        return *l;
    }();
    return pinned;
}

void spin_transfer_case(Gen& g, Ctx& c) {
    int n, k;
    do {
        n = g.uniform(2, 8);
        k = g.uniform(1, 2);
    } while (2 * k > n);
    CliffElt y = normalizing(g, n, k);
    c.check(check_pi_tw_square(y, k), "twisted projection square");

    int m = n / 2;
    auto ann = ann_K(k, n);
    c.eq(ann.size(), size_t(1) << (m - k), "dim Ann(K) = 2^(m-k)");
    bool vol = true;
    for (Word a : ann) {
        SpinorElt wb = spinor_action(volume_element(n), SpinorElt{m, {{a, 1}}});
        SpinorElt ws = spinor_action(volume_element(n - 2 * k), SpinorElt{m - k, {{ann_shift(a, k), 1}}});
        if (wb.coeffs.size() != 1 || ws.coeffs.size() != 1 || wb.coeffs.at(a) != ws.coeffs.at(ann_shift(a, k)))
            vol = false;
    }
    c.check(vol, "volume elements agree on Ann(K)");
    if (2 * k < n && (n - 2 * k) % 2 == 0) {
        auto red = reduce_spin_datum(standard_spin_datum(n), k);
        Mat w = datum_action(red.datum, volume_element(n - 2 * k));
        Mat wn = datum_action(standard_spin_datum(n), volume_element(n));
        c.check(wn * red.inclusion == red.inclusion * w, "parity of Ann(K) matches the reduced volume element");
    }

    static const std::vector<std::tuple<int, int, int>> staged{{5, 1, 1}, {6, 1, 1}, {7, 1, 1},
                                                               {8, 1, 1}, {8, 1, 2}, {8, 2, 1}};
    auto [sn, sk, sj] = staged[g.uniform(0, static_cast<int>(staged.size()) - 1)];
    SpinDatum d = standard_spin_datum(sn);
    if (sn <= 6) {
        Mat P = g.invertible(d.eta.rows()), Pi = inverse_or_throw(P);
        for (auto& a : d.action) a = Pi * a * P;
        d.eta = P.transpose() * d.eta * P;
    }
    auto lam = staged_scalar(d, sk, sj);
    c.check(lam.has_value(), "staged reduction is a scalar multiple of the direct one");
    if (lam) c.eq(*lam, pinned_staged_scalar(), "staged vs direct scalar");
}

// ---- matrix factorizations

void matfac_case(Gen& g, Ctx& c) {
    int n = 2 * g.uniform(1, 3), r = g.uniform(1, 3);
    ConeSpec cone{standard_quadspace(n), r, g.mat(n, r), {}};
    auto s = tautological_section(cone);
    MPoly w(r);
    for (int i = 0; i < n; ++i) w += s[i] * s[n - 1 - i];
    cone.ideal = {w};
    auto mf = build_matfac(cone, standard_spin_datum(n));
    PolyMat a = mf.dminus * mf.dplus, b = mf.dplus * mf.dminus;
    bool fac = mf.potential == w;
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j)
            if (!(a(i, j) == (i == j ? w : MPoly(r)))) fac = false;
    for (int i = 0; i < b.rows; ++i)
        for (int j = 0; j < b.cols; ++j)
            if (!(b(i, j) == (i == j ? w : MPoly(r)))) fac = false;
    c.check(fac, "d+ d- = d- d+ = q(s) id");

    ConeSpec neg = cone;
    neg.embedding = Rat(-1) * cone.embedding;
    auto h1 = graded_cohomology(mf, 3), h2 = graded_cohomology(build_matfac(neg, standard_spin_datum(n)), 3);
    c.check(h1.h0 == h2.h0 && h1.h1 == h2.h1, "sign flip keeps cohomology");

    int ln = 2 * g.uniform(1, 3), lk = g.uniform(0, std::min(2, ln / 2));
    auto lin = graded_cohomology(build_matfac(linear_cone(ln, lk), standard_spin_datum(ln)), 3);
    bool conc = true;
    for (int d = 1; d <= 3; ++d)
        if (lin.h0[d] || lin.h1[d]) conc = false;
    c.check(conc, "linear cone cohomology in degree 0");
    int kr = g.uniform(0, std::min(lk, (ln - 1) / 2));
    c.check(verify_reduction_qis(linear_cone(ln, lk), standard_spin_datum(ln), kr, 4), "reduction qis");
}

// ---- simplicial and ideals

std::vector<int> chain_counts(const SimplicialSubset& K) {
    std::vector<Face> fs(K.faces.begin(), K.faces.end());
    std::stable_sort(fs.begin(), fs.end(), [](const Face& a, const Face& b) { return a.size() < b.size(); });
    std::map<Face, std::vector<int>> ending;
    std::vector<int> total;
    for (auto& f : fs) {
        std::vector<int> cnt(f.size(), 0);
        cnt[0] = 1;
        for (auto& h : fs) {
            if (h.size() >= f.size()) break;
            if (!std::includes(f.begin(), f.end(), h.begin(), h.end())) continue;
            auto& ch = ending[h];
            for (size_t l = 0; l + 1 < cnt.size() && l < ch.size(); ++l) cnt[l + 1] += ch[l];
        }
        ending[f] = cnt;
        for (size_t l = 0; l < cnt.size(); ++l) {
            if (total.size() <= l) total.resize(l + 1, 0);
            total[l] += cnt[l];
        }
    }
    while (!total.empty() && total.back() == 0) total.pop_back();
    return total;
}

SimplicialSubset random_subset(Gen& g, int N) {
    std::vector<Face> gens;
    int count = g.uniform(1, 4);
    for (int t = 0; t < count; ++t) {
        Face f;
        for (int v = 0; v <= N; ++v)
            if (g.uniform(0, 1)) f.push_back(v);
        if (f.empty()) f.push_back(g.uniform(0, N));
        gens.push_back(f);
    }
    return simplicial_from(N, gens);
}

void simplicial_case(Gen& g, Ctx& c) {
    int N = g.uniform(1, 5), n = g.uniform(0, N);
    std::vector<std::vector<int>> J;
    int nj = g.uniform(0, 4);
    for (int t = 0; t < nj; ++t) {
        std::vector<int> s;
        for (int v = 0; v <= N; ++v)
            if (g.uniform(0, 2) == 0) s.push_back(v);
        J.push_back(s);
    }
    c.check(verify_ideal_lemma(N, n, J), "ideal intersection lemma");

    int M = g.uniform(1, 3);
    auto K = random_subset(g, M);
    for (auto& x : maximal_faces(K)) c.check(verify_pushout_ideal(K, x), "pushout ideal identity");

    int S = g.uniform(0, 3);
    auto L = random_subset(g, S);
    auto sd = subdivide(L);
    c.check(is_simplicial_subset(sd), "subdivision is a simplicial subset");
    c.eq(face_counts(sd), chain_counts(L), "subdivision face counts");
    auto sub = subdivide(simplicial_from(S, {maximal_faces(L)[0]}));
    c.check(std::includes(sd.faces.begin(), sd.faces.end(), sub.faces.begin(), sub.faces.end()),
            "subdivision of a subcomplex is a subcomplex");
}

// ---- K-theory

void ktheory_case(Gen& g, Ctx& c) {
    int r = g.uniform(1, 6);
    static const int ns[] = {2, 3, 4, 6};
    int n = ns[g.uniform(0, 3)];
    std::uint64_t base = g.engine()();
    auto A = random_augmented_ring(base, r);
    AlgElt a = random_element(A, base + 1, 1), b = random_element(A, base + 2, 1);
    AlgElt root = nth_root_unit(A, a, n);
    c.check(alg_pow(A, root, n) == a, "root^n = a");
    c.check(root == newton_root(A, a, n), "unipotent roots are unique");
    c.check(nth_root_unit(A, alg_mul(A, a, b), n) == alg_mul(A, root, nth_root_unit(A, b, n)), "roots multiply");
    c.check(unit_roots_trivial(n, A, base, 2), "unipotent roots of unity are trivial");
    GerbeKModel gm{A, n, random_element(A, base + 3, 1), {}};
    for (int i = 0; i < n; ++i) gm.classes.push_back(random_element(A, base + 10 + i, g.small_rat(2)));
    AlgElt v = random_element(A, base + 4, 1);
    c.check(untwisted_pushforward(retwist(gm, v)) == untwisted_pushforward(gm), "retwist invariance");
}

using CaseFn = std::function<void(Gen&, Ctx&, int)>;

const std::vector<std::pair<std::string, CaseFn>>& registry() {
    static const std::vector<std::pair<std::string, CaseFn>> reg{
        {"splicing", [](Gen& g, Ctx& c, int) { splicing_case(g, c); }},
        {"selfdual", [](Gen& g, Ctx& c, int) { selfdual_case(g, c); }},
        {"isored", [](Gen& g, Ctx& c, int) { isored_case(g, c); }},
        {"connectivity", [](Gen& g, Ctx& c, int) { connectivity_case(g, c); }},
        {"clifford", [](Gen& g, Ctx& c, int i) { clifford_case(g, c, i); }},
        {"spin-transfer", [](Gen& g, Ctx& c, int) { spin_transfer_case(g, c); }},
        {"matfac", [](Gen& g, Ctx& c, int) { matfac_case(g, c); }},
        {"simplicial", [](Gen& g, Ctx& c, int) { simplicial_case(g, c); }},
        {"ktheory", [](Gen& g, Ctx& c, int) { ktheory_case(g, c); }},
    };
    return reg;
}

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void run_one(const std::string& name, const CaseFn& fn, std::uint64_t seed, int cases, bool prefix,
             std::vector<CaseFailure>& out) {
    for (int i = 0; i < cases; ++i) {
        std::string id = (prefix ? name + "/" : "") + std::to_string(i);
        Ctx c(id, out);
        Gen g(case_seed(name, seed, i));
        try {
            fn(g, c, i);
        } catch (const Error& e) {
            c.check(false, "no error", "no error", std::string(errc_name(e.code())) + ": " + e.what());
        } catch (const std::exception& e) {
            c.check(false, "no error", "no error", e.what());
        }
    }
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (auto& [n, f] : registry()) v.push_back(n);
        return v;
    }();
    return names;
}

bool is_suite(const std::string& name) {
    return name == "all" || std::find(suite_names().begin(), suite_names().end(), name) != suite_names().end();
}

std::uint64_t case_seed(const std::string& suite, std::uint64_t seed, int index) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : suite) h = (h ^ ch) * 1099511628211ULL;
    return mix(mix(seed ^ h) + static_cast<std::uint64_t>(index));
}

VerificationReport run_suite(const std::string& name, std::uint64_t seed, int cases) {
    if (!is_suite(name)) fail(Errc::UnknownSuite, "unknown suite: " + name);
    if (cases < 0) fail(Errc::RangeError, "negative case count");
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep{name, seed, cases, {}, 0};
    for (auto& [n, fn] : registry())
        if (name == "all" || name == n) run_one(n, fn, seed, cases, name == "all", rep.failures);
    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::string report_json(const VerificationReport& r) {
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["seed"] = r.seed;
    j["cases"] = r.cases;
    j["passed"] = r.ok();
    j["failures"] = nlohmann::ordered_json::array();
    for (auto& f : r.failures)
        j["failures"].push_back(
            {{"case", f.case_id}, {"condition", f.condition}, {"expected", f.expected}, {"actual", f.actual}});
    return j.dump(2);
}

}  // namespace quadcx
