#include "quadcx/matfac.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace quadcx {

PolyMat::PolyMat(int r, int c, int nv) : rows(r), cols(c), nvars(nv), e(static_cast<size_t>(r) * c, MPoly(nv)) {}

PolyMat PolyMat::from(const Mat& m, int nv) {
    PolyMat p(m.rows(), m.cols(), nv);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (sgn(m(i, j)) != 0) p(i, j) = MPoly::constant(nv, m(i, j));
    return p;
}

bool PolyMat::is_zero() const {
    for (auto& p : e)
        if (!p.is_zero()) return false;
    return true;
}

Mat PolyMat::eval(const std::vector<Rat>& point) const {
    Mat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = (*this)(i, j).eval(point);
    return m;
}

bool operator==(const PolyMat& a, const PolyMat& b) {
    return a.rows == b.rows && a.cols == b.cols && a.nvars == b.nvars && a.e == b.e;
}

PolyMat operator*(const PolyMat& a, const PolyMat& b) {
    if (a.cols != b.rows || a.nvars != b.nvars) fail(Errc::ShapeMismatch, "polynomial matrix product");
    PolyMat c(a.rows, b.cols, a.nvars);
    for (int i = 0; i < a.rows; ++i)
        for (int l = 0; l < a.cols; ++l) {
            if (a(i, l).is_zero()) continue;
            for (int j = 0; j < b.cols; ++j)
                if (!b(l, j).is_zero()) c(i, j) += a(i, l) * b(l, j);
        }
    return c;
}

PolyMat operator+(const PolyMat& a, const PolyMat& b) {
    if (a.rows != b.rows || a.cols != b.cols || a.nvars != b.nvars) fail(Errc::ShapeMismatch, "polynomial matrix sum");
    PolyMat c = a;
    for (size_t i = 0; i < c.e.size(); ++i) c.e[i] += b.e[i];
    return c;
}

PolyMat poly_scale(const MPoly& p, const PolyMat& m) {
    PolyMat c(m.rows, m.cols, m.nvars);
    for (size_t i = 0; i < c.e.size(); ++i)
        if (!m.e[i].is_zero()) c.e[i] = p * m.e[i];
    return c;
}

namespace {

PolyMat kron(const PolyMat& a, const PolyMat& b) {
    PolyMat c(a.rows * b.rows, a.cols * b.cols, a.nvars);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) {
            if (a(i, j).is_zero()) continue;
            for (int k = 0; k < b.rows; ++k)
                for (int l = 0; l < b.cols; ++l)
                    if (!b(k, l).is_zero()) c(i * b.rows + k, j * b.cols + l) = a(i, j) * b(k, l);
        }
    return c;
}

PolyMat conj(const Mat& left, const PolyMat& m, const Mat& right) {
    return PolyMat::from(left, m.nvars) * m * PolyMat::from(right, m.nvars);
}

bool divides(const Exps& a, const Exps& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

void monomials_of_degree(int nvars, int d, Exps& cur, int at, std::vector<Exps>& out) {
    if (at == nvars - 1) {
        cur[at] = d;
        out.push_back(cur);
        cur[at] = 0;
        return;
    }
    for (int a = d; a >= 0; --a) {
        cur[at] = a;
        monomials_of_degree(nvars, d - a, cur, at + 1, out);
    }
    cur[at] = 0;
}

MPoly drop_vars(const MPoly& p, int k) {
    MPoly q(p.nvars() - k);
    for (auto& [e, c] : p.terms()) {
        for (int i = 0; i < k; ++i)
            if (e[i]) fail(Errc::SplitMismatch, "cone equations involve the K coordinates");
        q.add_term(Exps(e.begin() + k, e.end()), c);
    }
    return q;
}

// D x D action of s = sum s_i b_i on S
PolyMat section_operator(const std::vector<MPoly>& s, const SpinDatum& sigma, int nv) {
    int D = sigma.eta.rows();
    PolyMat d(D, D, nv);
    for (size_t i = 0; i < s.size(); ++i)
        if (!s[i].is_zero()) d = d + poly_scale(s[i], PolyMat::from(sigma.action[i], nv));
    return d;
}

class Graded {
public:
    explicit Graded(const QuotientRing& R) : R_(R) {}

    const std::vector<Exps>& basis(int d) {
        auto it = basis_.find(d);
        if (it != basis_.end()) return it->second;
        auto b = d < 0 ? std::vector<Exps>{} : standard_monomials(R_, d);
        std::map<Exps, int> idx;
        for (size_t i = 0; i < b.size(); ++i) idx[b[i]] = static_cast<int>(i);
        index_[d] = std::move(idx);
        return basis_.emplace(d, std::move(b)).first->second;
    }

    // multiplication by p (homogeneous of degree 1): R_d -> R_{d+1}
    Mat mult(const MPoly& p, int d) {
        auto& src = basis(d);
        auto& tgt = basis(d + 1);
        auto& idx = index_.at(d + 1);
        Mat m(static_cast<int>(tgt.size()), static_cast<int>(src.size()));
        if (p.is_zero()) return m;
        for (size_t j = 0; j < src.size(); ++j) {
            MPoly prod = p * MPoly::monomial(src[j], 1);
            MPoly nf = normal_form(prod, R_.gb.basis, R_.gb.order);
            for (auto& [e, c] : nf.terms()) m(idx.at(e), static_cast<int>(j)) = c;
        }
        return m;
    }

    // coordinates of a polynomial map applied to R_d -> R_{d}, given the images of monomials
    int index_of(int d, const Exps& e) { return index_.at(d).at(e); }

    // block matrix of a polynomial matrix with linear entries: (rows * b_{d+1}) x (cols * b_d)
    Mat block(const PolyMat& m, int d) {
        int bs = static_cast<int>(basis(d).size()), bt = static_cast<int>(basis(d + 1).size());
        Mat out(m.rows * bt, m.cols * bs);
        if (bs == 0 || bt == 0) return out;
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j)
                if (!m(i, j).is_zero()) out.set_block(i * bt, j * bs, mult(m(i, j), d));
        return out;
    }

    const QuotientRing& ring() const { return R_; }

private:
    const QuotientRing& R_;
    std::map<int, std::vector<Exps>> basis_;
    std::map<int, std::map<Exps, int>> index_;
};

void check_linear_entries(const PolyMat& m) {
    for (auto& p : m.e)
        if (!p.is_zero() && (!p.is_homogeneous() || p.total_degree() != 1))
            fail(Errc::NotHomogeneous, "differential entries must be linear forms");
}

// S (x) R_d coordinates of the ring map Rbar -> R (prepend k zero exponents) tensored with J
Mat inclusion_block(Graded& small, Graded& big, const Mat& J, int k, int d) {
    auto& bs = small.basis(d);
    auto& bb = big.basis(d);
    Mat ring(static_cast<int>(bb.size()), static_cast<int>(bs.size()));
    for (size_t j = 0; j < bs.size(); ++j) {
        Exps e(k, 0);
        e.insert(e.end(), bs[j].begin(), bs[j].end());
        MPoly nf = normal_form(MPoly::monomial(e, 1), big.ring().gb.basis, big.ring().gb.order);
        for (auto& [f, c] : nf.terms()) ring(big.index_of(d, f), static_cast<int>(j)) = c;
    }
    Mat out(J.rows() * ring.rows(), J.cols() * ring.cols());
    if (ring.rows() == 0 || ring.cols() == 0) return out;
    for (int a = 0; a < J.rows(); ++a)
        for (int b = 0; b < J.cols(); ++b)
            if (sgn(J(a, b)) != 0) out.set_block(a * ring.rows(), b * ring.cols(), J(a, b) * ring);
    return out;
}

// Clifford-linear iso from the standard module to sigma's module
Mat intertwiner(const SpinDatum& sigma) {
    int n = sigma.space.n, D = sigma.eta.rows();
    SpinDatum st = standard_spin_datum(n);
    if (D != st.eta.rows()) fail(Errc::ShapeMismatch, "module has the wrong rank");
    // A_i X - X B_i = 0 on vec(X), row-major
    Mat sys(0, D * D);
    for (int i = 0; i < n; ++i) {
        Mat eq(D * D, D * D);
        for (int r = 0; r < D; ++r)
            for (int c = 0; c < D; ++c) {
                int row = r * D + c;
                for (int l = 0; l < D; ++l) {
                    eq(row, l * D + c) += sigma.action[i](r, l);
                    eq(row, r * D + l) -= st.action[i](l, c);
                }
            }
        sys = vstack(sys, eq);
    }
    Mat ker = kernel_basis(sys);
    if (ker.cols() != 1) fail(Errc::PreconditionFailed, "module is not the spinor module");
    Mat X(D, D);
    for (int r = 0; r < D; ++r)
        for (int c = 0; c < D; ++c) X(r, c) = ker(r * D + c, 0);
    return X;
}

}  // namespace

QuotientRing make_quotient(int nvars, const std::vector<MPoly>& gens) {
    for (auto& g : gens) {
        if (g.nvars() != nvars) fail(Errc::ShapeMismatch, "cone equation arity");
        if (!g.is_homogeneous()) fail(Errc::NotHomogeneous, "cone equations must be homogeneous");
    }
    return {nvars, gens, buchberger(Ideal{nvars, gens})};
}

std::vector<Exps> standard_monomials(const QuotientRing& R, int d) {
    std::vector<Exps> all, out;
    if (d < 0) return out;
    if (R.nvars == 0) {
        all.push_back({});
        if (d > 0) all.clear();
    } else {
        Exps cur(R.nvars, 0);
        monomials_of_degree(R.nvars, d, cur, 0, all);
    }
    std::vector<Exps> leads;
    for (auto& g : R.gb.basis) leads.push_back(g.lead_exps(R.gb.order));
    for (auto& m : all) {
        bool standard = true;
        for (auto& l : leads)
            if (divides(l, m)) standard = false;
        if (standard) out.push_back(m);
    }
    return out;
}

ConeSpec linear_cone(int n, int k) {
    if (k < 0 || 2 * k > n) fail(Errc::RangeError, "need 0 <= 2k <= n");
    ConeSpec c{standard_quadspace(n), k, Mat(n, k), {}};
    for (int i = 0; i < k; ++i) c.embedding(i, i) = 1;
    return c;
}

std::vector<MPoly> tautological_section(const ConeSpec& c) {
    if (c.embedding.rows() != c.ambient.n || c.embedding.cols() != c.vars)
        fail(Errc::ShapeMismatch, "embedding has the wrong shape");
    std::vector<MPoly> s;
    for (int i = 0; i < c.ambient.n; ++i) {
        MPoly p(c.vars);
        for (int j = 0; j < c.vars; ++j)
            if (sgn(c.embedding(i, j)) != 0) p += c.embedding(i, j) * MPoly::var(c.vars, j);
        s.push_back(p);
    }
    return s;
}

TwoPeriodicComplex build_matfac(const ConeSpec& cone, const SpinDatum& sigma) {
    int n = cone.ambient.n;
    if (n % 2) fail(Errc::OddRank, "matrix factorizations need even rank");
    if (!(sigma.space.Q == cone.ambient.Q)) fail(Errc::SpaceMismatch, "spin datum over a different form");
    auto s = tautological_section(cone);
    int nv = cone.vars;
    TwoPeriodicComplex c;
    c.ring = make_quotient(nv, cone.ideal);
    MPoly w(nv);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (sgn(cone.ambient.Q(i, j)) != 0) w += cone.ambient.Q(i, j) * (s[i] * s[j]);
    c.potential = w;
    if (!ideal_member(w, c.ring.gb)) fail(Errc::IsotropyFailure, "q(s) does not vanish on the cone");

    int D = sigma.eta.rows();
    Mat om = datum_action(sigma, volume_element(n));
    c.plus_basis = kernel_basis(om - Mat::identity(D));
    c.minus_basis = kernel_basis(om + Mat::identity(D));
    c.splus = c.plus_basis.cols();
    c.sminus = c.minus_basis.cols();
    if (c.splus + c.sminus != D) fail(Errc::PreconditionFailed, "volume element is not an involution");
    c.dplus = PolyMat(c.sminus, c.splus, nv);
    c.dminus = PolyMat(c.splus, c.sminus, nv);
    for (int i = 0; i < n; ++i) {
        if (s[i].is_zero()) continue;
        Mat pm = solve_or_throw(c.minus_basis, sigma.action[i] * c.plus_basis, "vector maps S+ to S-");
        Mat mp = solve_or_throw(c.plus_basis, sigma.action[i] * c.minus_basis, "vector maps S- to S+");
        c.dplus = c.dplus + poly_scale(s[i], PolyMat::from(pm, nv));
        c.dminus = c.dminus + poly_scale(s[i], PolyMat::from(mp, nv));
    }
    auto wI = [&](int r) {
        PolyMat m(r, r, nv);
        for (int i = 0; i < r; ++i) m(i, i) = w;
        return m;
    };
    if (!(c.dminus * c.dplus == wI(c.splus)) || !(c.dplus * c.dminus == wI(c.sminus)))
        fail(Errc::Internal, "matrix factorization identity fails");
    return c;
}

GradedCohomology graded_cohomology(const TwoPeriodicComplex& c, int cutoff) {
    if (cutoff < 0) fail(Errc::RangeError, "negative cutoff");
    if (!ideal_member(c.potential, c.ring.gb)) fail(Errc::NotAComplex, "potential does not vanish on the cone");
    check_linear_entries(c.dplus);
    check_linear_entries(c.dminus);
    Graded G(c.ring);
    GradedCohomology h;
    for (int d = 0; d <= cutoff; ++d) {
        int b = static_cast<int>(G.basis(d).size());
        Mat p_out = G.block(c.dplus, d), m_out = G.block(c.dminus, d);
        Mat p_in = G.block(c.dplus, d - 1), m_in = G.block(c.dminus, d - 1);
        h.h0.push_back(c.splus * b - rank(p_out) - rank(m_in));
        h.h1.push_back(c.sminus * b - rank(m_out) - rank(p_in));
    }
    h.stabilized = h.h0.back() == 0 && h.h1.back() == 0;
    if (!h.stabilized) h.warning = "cohomology has not vanished by degree " + std::to_string(cutoff);
    return h;
}

ConeSpec reduce_cone(const ConeSpec& cone, int k) {
    int n = cone.ambient.n;
    if (k < 0 || 2 * k > n || k > cone.vars) fail(Errc::RangeError, "need 0 <= 2k <= n and k <= vars");
    const Mat& E = cone.embedding;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j)
            if (E(i, j) != (i == j ? 1 : 0)) fail(Errc::SplitMismatch, "first cone coordinates must be e_1..e_k");
    for (int i = n - k; i < n; ++i)
        for (int j = k; j < cone.vars; ++j)
            if (sgn(E(i, j)) != 0) fail(Errc::SplitMismatch, "cone is not inside K^perp");
    ConeSpec r{standard_quadspace(n - 2 * k), cone.vars - k, E.block(k, k, n - 2 * k, cone.vars - k), {}};
    for (auto& g : cone.ideal) r.ideal.push_back(drop_vars(g, k));
    return r;
}

bool QisReport::ok() const {
    if (!chain_map) return false;
    for (bool b : degree_iso)
        if (!b) return false;
    return true;
}

QisReport reduction_qis_report(const ConeSpec& cone, const SpinDatum& sigma, int k, int cutoff) {
    if (cutoff < 0) fail(Errc::RangeError, "negative cutoff");
    ReducedDatum red = reduce_spin_datum(sigma, k);
    ConeSpec rc = reduce_cone(cone, k);
    TwoPeriodicComplex big = build_matfac(cone, sigma);
    TwoPeriodicComplex small = build_matfac(rc, red.datum);
    Mat Jp = solve_or_throw(big.plus_basis, red.inclusion * small.plus_basis, "Ann(K) parity");
    Mat Jm = solve_or_throw(big.minus_basis, red.inclusion * small.minus_basis, "Ann(K) parity");

    Graded Gb(big.ring), Gs(small.ring);
    QisReport rep;
    rep.chain_map = true;
    rep.full = graded_cohomology(big, cutoff);
    rep.reduced = graded_cohomology(small, cutoff);
    for (int d = 0; d <= cutoff; ++d) {
        Mat Fp = inclusion_block(Gs, Gb, Jp, k, d), Fm = inclusion_block(Gs, Gb, Jm, k, d);
        Mat Fp1 = inclusion_block(Gs, Gb, Jp, k, d + 1), Fm1 = inclusion_block(Gs, Gb, Jm, k, d + 1);
        Mat bp = Gb.block(big.dplus, d), bm = Gb.block(big.dminus, d);
        Mat sp = Gs.block(small.dplus, d), sm = Gs.block(small.dminus, d);
        if (!(Fm1 * sp == bp * Fp) || !(Fp1 * sm == bm * Fm)) rep.chain_map = false;

        Mat bp_in = Gb.block(big.dplus, d - 1), bm_in = Gb.block(big.dminus, d - 1);
        // surjectivity onto cohomology plus equal dimensions
        auto onto = [](const Mat& F, const Mat& small_out, const Mat& big_out, const Mat& big_in) {
            Mat Zs = kernel_basis(small_out), Zb = kernel_basis(big_out);
            return rank(hstack(F * Zs, big_in)) == Zb.cols();
        };
        bool iso = rep.full.h0[d] == rep.reduced.h0[d] && rep.full.h1[d] == rep.reduced.h1[d] &&
                   onto(Fp, sp, bp, bm_in) && onto(Fm, sm, bm, bp_in);
        rep.degree_iso.push_back(iso);
    }
    return rep;
}

bool verify_reduction_qis(const ConeSpec& cone, const SpinDatum& sigma, int k, int cutoff) {
    return reduction_qis_report(cone, sigma, k, cutoff).ok();
}

KoszulDecomposition koszul_decompose(const ConeSpec& cone, const SpinDatum& sigma, int k) {
    int n = cone.ambient.n;
    if (n % 2) fail(Errc::OddRank, "matrix factorizations need even rank");
    ConeSpec rc = reduce_cone(cone, k);
    for (int i = 0; i < k; ++i)
        for (int j = k; j < cone.vars; ++j)
            if (sgn(cone.embedding(i, j)) != 0) fail(Errc::SplitMismatch, "cone is not a product with K");
    int nv = cone.vars, m = n / 2, D = 1 << m, DK = 1 << k, DF = 1 << (m - k);

    KoszulDecomposition out;
    out.full = build_matfac(cone, sigma);
    out.reduced = build_matfac(rc, standard_spin_datum(n - 2 * k));

    // d_F on S_tau over all cone variables
    std::vector<MPoly> sbar;
    for (auto& p : tautological_section(rc)) sbar.push_back(p.insert_vars(0, k));
    PolyMat dF = section_operator(sbar, standard_spin_datum(n - 2 * k), nv);
    std::vector<MPoly> sK;
    for (int i = 0; i < k; ++i) sK.push_back(MPoly::var(nv, i));
    SpinDatum stK = standard_spin_datum(2 * k);
    out.koszul = section_operator(sK, stK, nv);
    PolyMat eps(DF, DF, nv), idK(DK, DK, nv);
    for (int a = 0; a < DF; ++a) eps(a, a) = MPoly::constant(nv, std::popcount(static_cast<Word>(a)) % 2 ? -1 : 1);
    for (int b = 0; b < DK; ++b) idK(b, b) = MPoly::constant(nv, 1);
    out.tensor = kron(dF, idK) + kron(eps, out.koszul);

    // s (x) t -> s ^ t, with s in f_{k+1}..f_m and t in f_1..f_k
    Mat phi(D, D);
    for (int a = 0; a < DF; ++a)
        for (int b = 0; b < DK; ++b) {
            int sign = (std::popcount(static_cast<Word>(a)) * std::popcount(static_cast<Word>(b))) % 2 ? -1 : 1;
            phi((a << k) | b, a * DK + b) = sign;
        }
    out.change = intertwiner(sigma) * phi;
    PolyMat dE = section_operator(tautological_section(cone), sigma, nv);
    out.conjugated = conj(inverse_or_throw(out.change), dE, out.change);
    out.matches = out.conjugated == out.tensor;
    return out;
}

Dt4Report dt4_local_demo(int n, int k, int cutoff) {
    if (n < 0 || n % 2 || k < 0 || 2 * k > n) fail(Errc::RangeError, "need even n and 0 <= 2k <= n");
    if (cutoff < 0) fail(Errc::RangeError, "negative cutoff");
    Dt4Report r{n, k, cutoff, {}, 0, 0, 0, false, false};
    r.coh = graded_cohomology(build_matfac(linear_cone(n, k), standard_spin_datum(n)), cutoff);
    int mk = n / 2 - k;
    r.expected_even = mk == 0 ? 1 : 1 << (mk - 1);
    r.expected_odd = mk == 0 ? 0 : 1 << (mk - 1);
    r.concentrated = true;
    for (int d = 0; d <= cutoff; ++d) {
        r.total += r.coh.h0[d] + r.coh.h1[d];
        if (d > 0 && (r.coh.h0[d] || r.coh.h1[d])) r.concentrated = false;
    }
    r.matches = r.concentrated && r.coh.h0[0] == r.expected_even && r.coh.h1[0] == r.expected_odd &&
                r.total == (1 << mk);
    return r;
}

}  // namespace quadcx
