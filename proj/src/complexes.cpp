#include "quadcx/complexes.hpp"

#include <algorithm>

namespace quadcx {

FreeComplex::FreeComplex(int lo, std::vector<int> ranks, std::vector<Mat> diffs)
    : lo_(lo), ranks_(std::move(ranks)), diffs_(std::move(diffs)) {
    size_t want = ranks_.empty() ? 0 : ranks_.size() - 1;
    if (diffs_.size() != want) fail(Errc::ShapeMismatch, "differential count does not match degree range");
    for (int r : ranks_)
        if (r < 0) fail(Errc::ShapeMismatch, "negative rank");
    for (size_t k = 0; k < diffs_.size(); ++k)
        if (diffs_[k].rows() != ranks_[k + 1] || diffs_[k].cols() != ranks_[k])
            fail(Errc::ShapeMismatch, "differential shape does not match ranks");
}

FreeComplex FreeComplex::single(int deg, int rank) { return FreeComplex(deg, {rank}, {}); }

int FreeComplex::rank(int i) const {
    if (ranks_.empty() || i < lo_ || i > hi()) return 0;
    return ranks_[i - lo_];
}

Mat FreeComplex::d(int i) const {
    if (i >= lo_ && i < hi()) return diffs_[i - lo_];
    return Mat(rank(i + 1), rank(i));
}

int FreeComplex::total_rank() const {
    int s = 0;
    for (int r : ranks_) s += r;
    return s;
}

std::pair<int, int> span_of(const FreeComplex& a, const FreeComplex& b) {
    if (a.empty_range() && b.empty_range()) return {0, -1};
    if (a.empty_range()) return {b.lo(), b.hi()};
    if (b.empty_range()) return {a.lo(), a.hi()};
    return {std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

bool operator==(const FreeComplex& a, const FreeComplex& b) {
    auto [lo, hi] = span_of(a, b);
    for (int i = lo; i <= hi; ++i) {
        if (a.rank(i) != b.rank(i)) return false;
        if (!(a.d(i) == b.d(i))) return false;
    }
    return true;
}

Mat ChainMap::at(int i) const {
    auto it = comps.find(i);
    if (it != comps.end()) return it->second;
    return Mat(tgt.rank(i), src.rank(i));
}

void ChainMap::set(int i, Mat m) {
    if (m.rows() != tgt.rank(i) || m.cols() != src.rank(i)) fail(Errc::ShapeMismatch, "chain map component shape");
    comps[i] = std::move(m);
}

Mat Homotopy::at(int i) const {
    auto it = comps.find(i);
    if (it != comps.end()) return it->second;
    return Mat(tgt.rank(i - 1), src.rank(i));
}

void Homotopy::set(int i, Mat m) {
    if (m.rows() != tgt.rank(i - 1) || m.cols() != src.rank(i)) fail(Errc::ShapeMismatch, "homotopy component shape");
    comps[i] = std::move(m);
}

bool is_complex(const FreeComplex& c) {
    for (int i = c.lo(); i + 1 < c.hi(); ++i)
        if (!(c.d(i + 1) * c.d(i)).is_zero()) return false;
    return true;
}

FreeComplex make_complex(int lo, const std::vector<int>& ranks, const std::vector<Mat>& diffs) {
    FreeComplex c(lo, ranks, diffs);
    if (!is_complex(c)) fail(Errc::NotAComplex, "d^2 != 0");
    return c;
}

bool is_chain_map(const ChainMap& f) {
    auto [lo, hi] = span_of(f.src, f.tgt);
    for (auto& [i, m] : f.comps)
        if (m.rows() != f.tgt.rank(i) || m.cols() != f.src.rank(i)) return false;
    for (int i = lo - 1; i <= hi; ++i)
        if (!(f.tgt.d(i) * f.at(i) == f.at(i + 1) * f.src.d(i))) return false;
    return true;
}

bool maps_equal(const ChainMap& f, const ChainMap& g) {
    if (!(f.src == g.src) || !(f.tgt == g.tgt)) return false;
    auto [lo, hi] = span_of(f.src, f.tgt);
    for (int i = lo; i <= hi; ++i)
        if (!(f.at(i) == g.at(i))) return false;
    return true;
}

FreeComplex dual(const FreeComplex& c) {
    if (c.empty_range()) return c;
    std::vector<int> ranks;
    std::vector<Mat> diffs;
    for (int i = -c.hi(); i <= -c.lo(); ++i) ranks.push_back(c.rank(-i));
    for (int i = -c.hi(); i < -c.lo(); ++i) diffs.push_back(c.d(-i - 1).transpose());
    return FreeComplex(-c.hi(), ranks, diffs);
}

ChainMap dual(const ChainMap& f) {
    ChainMap g{dual(f.tgt), dual(f.src), {}};
    for (auto& [i, m] : f.comps) g.comps[-i] = m.transpose();
    return g;
}

Homotopy dual(const Homotopy& h) {
    Homotopy g{dual(h.tgt), dual(h.src), {}};
    for (auto& [i, m] : h.comps) g.comps[1 - i] = m.transpose();
    return g;
}

FreeComplex cone(const ChainMap& f) {
    const FreeComplex& a = f.src;
    const FreeComplex& b = f.tgt;
    if (a.empty_range() && b.empty_range()) return FreeComplex();
    int lo, hi;
    if (a.empty_range()) lo = b.lo(), hi = b.hi();
    else if (b.empty_range()) lo = a.lo() - 1, hi = a.hi() - 1;
    else lo = std::min(b.lo(), a.lo() - 1), hi = std::max(b.hi(), a.hi() - 1);
    std::vector<int> ranks;
    std::vector<Mat> diffs;
    for (int i = lo; i <= hi; ++i) ranks.push_back(b.rank(i) + a.rank(i + 1));
    for (int i = lo; i < hi; ++i) {
        Rat sign = (i % 2 == 0) ? -1 : 1;  // (-1)^{i+1}
        diffs.push_back(block2(b.d(i), sign * f.at(i + 1), Mat(a.rank(i + 2), b.rank(i)), a.d(i + 1)));
    }
    return FreeComplex(lo, ranks, diffs);
}

std::map<int, int> cohomology(const FreeComplex& c) {
    std::map<int, int> h;
    for (int i = c.lo(); i <= c.hi(); ++i) h[i] = c.rank(i) - rank(c.d(i)) - rank(c.d(i - 1));
    return h;
}

Mat cohomology_reps(const FreeComplex& c, int i) {
    Mat z = kernel_basis(c.d(i));
    Mat acc = image_basis(c.d(i - 1));
    std::vector<int> keep;
    int r = acc.cols();
    for (int j = 0; j < z.cols(); ++j) {
        Mat trial = hstack(acc, z.col(j));
        int rt = rank(trial);
        if (rt > r) {
            acc = trial;
            r = rt;
            keep.push_back(j);
        }
    }
    return z.select_cols(keep);
}

Mat cohomology_coords(const FreeComplex& c, int i, const Mat& cocycles) {
    Mat reps = cohomology_reps(c, i);
    Mat sys = hstack(reps, image_basis(c.d(i - 1)));
    Mat y = solve_or_throw(sys, cocycles, "not a cocycle");
    return y.block(0, 0, reps.cols(), cocycles.cols());
}

Mat induced_on_cohomology(const ChainMap& f, int i) {
    Mat reps = cohomology_reps(f.src, i);
    return cohomology_coords(f.tgt, i, f.at(i) * reps);
}

bool is_acyclic(const FreeComplex& c) {
    for (auto& [i, h] : cohomology(c))
        if (h != 0) return false;
    return true;
}

bool is_qis(const ChainMap& f) { return is_acyclic(cone(f)); }

ChainMap identity_map(const FreeComplex& c) {
    ChainMap f{c, c, {}};
    for (int i = c.lo(); i <= c.hi(); ++i) f.comps[i] = Mat::identity(c.rank(i));
    return f;
}

ChainMap zero_map(const FreeComplex& src, const FreeComplex& tgt) { return ChainMap{src, tgt, {}}; }

ChainMap compose(const ChainMap& g, const ChainMap& f) {
    if (!(f.tgt == g.src)) fail(Errc::ShapeMismatch, "compose: complexes do not match");
    ChainMap h{f.src, g.tgt, {}};
    auto [lo, hi] = span_of(f.src, g.tgt);
    for (int i = lo; i <= hi; ++i) {
        Mat m = g.at(i) * f.at(i);
        if (m.rows() && m.cols()) h.comps[i] = m;
    }
    return h;
}

ChainMap add(const ChainMap& f, const ChainMap& g) {
    if (!(f.src == g.src) || !(f.tgt == g.tgt)) fail(Errc::ShapeMismatch, "add: complexes do not match");
    ChainMap h{f.src, f.tgt, {}};
    auto [lo, hi] = span_of(f.src, f.tgt);
    for (int i = lo; i <= hi; ++i) h.comps[i] = f.at(i) + g.at(i);
    return h;
}

ChainMap scale(const Rat& s, const ChainMap& f) {
    ChainMap h = f;
    for (auto& [i, m] : h.comps) m *= s;
    return h;
}

FreeComplex direct_sum(const FreeComplex& a, const FreeComplex& b) {
    auto [lo, hi] = span_of(a, b);
    if (hi < lo) return FreeComplex();
    std::vector<int> ranks;
    std::vector<Mat> diffs;
    for (int i = lo; i <= hi; ++i) ranks.push_back(a.rank(i) + b.rank(i));
    for (int i = lo; i < hi; ++i) diffs.push_back(block_diag(a.d(i), b.d(i)));
    return FreeComplex(lo, ranks, diffs);
}

ChainMap direct_sum(const ChainMap& f, const ChainMap& g) {
    ChainMap h{direct_sum(f.src, g.src), direct_sum(f.tgt, g.tgt), {}};
    auto [lo, hi] = span_of(h.src, h.tgt);
    for (int i = lo; i <= hi; ++i) h.comps[i] = block_diag(f.at(i), g.at(i));
    return h;
}

FreeComplex shift(const FreeComplex& c, int k) {
    if (c.empty_range()) return c;
    std::vector<int> ranks;
    std::vector<Mat> diffs;
    Rat s = (k % 2 == 0) ? 1 : -1;
    for (int i = c.lo(); i <= c.hi(); ++i) ranks.push_back(c.rank(i));
    for (int i = c.lo(); i < c.hi(); ++i) diffs.push_back(s * c.d(i));
    return FreeComplex(c.lo() - k, ranks, diffs);
}

ChainMap homotopy_boundary(const Homotopy& h) {
    ChainMap f{h.src, h.tgt, {}};
    auto [lo, hi] = span_of(h.src, h.tgt);
    for (int i = lo; i <= hi; ++i) f.comps[i] = h.tgt.d(i - 1) * h.at(i) + h.at(i + 1) * h.src.d(i);
    return f;
}

bool check_homotopy(const ChainMap& f, const ChainMap& g, const Homotopy& h) {
    ChainMap b = homotopy_boundary(h);
    auto [lo, hi] = span_of(f.src, f.tgt);
    for (int i = lo; i <= hi; ++i)
        if (!(f.at(i) - g.at(i) == b.at(i))) return false;
    return true;
}

Homotopy zero_homotopy(const FreeComplex& src, const FreeComplex& tgt) { return Homotopy{src, tgt, {}}; }

std::optional<Homotopy> homotopy_between(const ChainMap& f, const ChainMap& g) {
    const FreeComplex& a = f.src;
    const FreeComplex& b = f.tgt;
    auto [lo, hi] = span_of(a, b);
    // unknown blocks h_i for i in [lo, hi+1]
    std::map<int, int> off;
    int nunk = 0;
    for (int i = lo; i <= hi + 1; ++i) {
        off[i] = nunk;
        nunk += b.rank(i - 1) * a.rank(i);
    }
    int neq = 0;
    for (int i = lo; i <= hi; ++i) neq += b.rank(i) * a.rank(i);
    Mat sys(neq, nunk), rhs(neq, 1);
    int row = 0;
    for (int i = lo; i <= hi; ++i) {
        Mat diff = f.at(i) - g.at(i);
        Mat db = b.d(i - 1);  // B^{i-1} -> B^i
        Mat da = a.d(i);      // A^i -> A^{i+1}
        int nb = b.rank(i), na = a.rank(i);
        int hi_cols = a.rank(i);      // h_i: A^i -> B^{i-1}
        int hn_cols = a.rank(i + 1);  // h_{i+1}: A^{i+1} -> B^i
        for (int r = 0; r < nb; ++r)
            for (int c = 0; c < na; ++c, ++row) {
                rhs(row, 0) = diff(r, c);
                for (int k = 0; k < b.rank(i - 1); ++k)
                    if (sgn(db(r, k))) sys(row, off[i] + k * hi_cols + c) += db(r, k);
                for (int k = 0; k < a.rank(i + 1); ++k)
                    if (sgn(da(k, c))) sys(row, off[i + 1] + r * hn_cols + k) += da(k, c);
            }
    }
    auto x = solve_linear(sys, rhs);
    if (!x) return std::nullopt;
    Homotopy h{a, b, {}};
    for (int i = lo; i <= hi + 1; ++i) {
        int rr = b.rank(i - 1), cc = a.rank(i);
        if (!rr || !cc) continue;
        Mat m(rr, cc);
        for (int r = 0; r < rr; ++r)
            for (int c = 0; c < cc; ++c) m(r, c) = (*x)(off[i] + r * cc + c, 0);
        h.comps[i] = m;
    }
    return h;
}

Homotopy compose(const ChainMap& g, const Homotopy& h) {
    Homotopy out{h.src, g.tgt, {}};
    for (auto& [i, m] : h.comps) out.comps[i] = g.at(i - 1) * m;
    return out;
}

Homotopy compose(const Homotopy& h, const ChainMap& f) {
    Homotopy out{f.src, h.tgt, {}};
    for (auto& [i, m] : h.comps) out.comps[i] = m * f.at(i);
    return out;
}

bool is_degreewise_iso(const ChainMap& f) {
    auto [lo, hi] = span_of(f.src, f.tgt);
    for (int i = lo; i <= hi; ++i) {
        Mat m = f.at(i);
        if (!m.is_square() || rank(m) != m.rows()) return false;
    }
    return true;
}

ChainMap inverse_iso(const ChainMap& f) {
    ChainMap g{f.tgt, f.src, {}};
    auto [lo, hi] = span_of(f.src, f.tgt);
    for (int i = lo; i <= hi; ++i) {
        Mat m = f.at(i);
        if (!m.is_square()) fail(Errc::Singular, "not a degreewise isomorphism");
        g.comps[i] = inverse_or_throw(m);
    }
    return g;
}

TMat::TMat(const Mat& m) : rows_(m.rows()), cols_(m.cols()), c_{m} { trim(); }

TMat TMat::t_times(const Mat& m) {
    TMat t(m.rows(), m.cols());
    t.c_ = {Mat(m.rows(), m.cols()), m};
    t.trim();
    return t;
}

void TMat::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

TMat TMat::from_coeffs(int rows, int cols, std::vector<Mat> coeffs) {
    TMat t(rows, cols);
    for (auto& m : coeffs)
        if (m.rows() != rows || m.cols() != cols) fail(Errc::ShapeMismatch, "coefficient shape");
    t.c_ = std::move(coeffs);
    t.trim();
    return t;
}

Mat TMat::coeff(size_t k) const { return k < c_.size() ? c_[k] : Mat(rows_, cols_); }

Mat TMat::at(const Rat& t) const {
    Mat out(rows_, cols_);
    Rat p = 1;
    for (auto& m : c_) {
        out += p * m;
        p *= t;
    }
    return out;
}

int TMat::degree() const { return static_cast<int>(c_.size()) - 1; }
bool TMat::is_zero() const { return c_.empty(); }

TMat operator+(const TMat& a, const TMat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(Errc::ShapeMismatch, "TMat sum shape");
    TMat out(a.rows_, a.cols_);
    size_t n = std::max(a.c_.size(), b.c_.size());
    for (size_t k = 0; k < n; ++k) out.c_.push_back(a.coeff(k) + b.coeff(k));
    out.trim();
    return out;
}

TMat operator-(const TMat& a, const TMat& b) { return a + Rat(-1) * b; }

TMat operator*(const TMat& a, const TMat& b) {
    if (a.cols_ != b.rows_) fail(Errc::ShapeMismatch, "TMat product shape");
    TMat out(a.rows_, b.cols_);
    if (a.c_.empty() || b.c_.empty()) return out;
    out.c_.assign(a.c_.size() + b.c_.size() - 1, Mat(a.rows_, b.cols_));
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
    out.trim();
    return out;
}

TMat operator*(const Rat& s, const TMat& a) {
    TMat out = a;
    for (auto& m : out.c_) m *= s;
    out.trim();
    return out;
}

bool operator==(const TMat& a, const TMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.c_ == b.c_;
}

TMat TMat::transpose() const {
    TMat out(cols_, rows_);
    for (auto& m : c_) out.c_.push_back(m.transpose());
    return out;
}

int PolyComplex::rank(int i) const {
    if (ranks.empty() || i < lo || i > hi()) return 0;
    return ranks[i - lo];
}

TMat PolyComplex::d(int i) const {
    if (i >= lo && i < hi()) return diffs[i - lo];
    return TMat(rank(i + 1), rank(i));
}

TMat PolyChainMap::at(int i) const {
    auto it = comps.find(i);
    if (it != comps.end()) return it->second;
    return TMat(tgt.rank(i), src.rank(i));
}

PolyComplex tensor_with_ring(const FreeComplex& c) {
    PolyComplex p;
    p.lo = c.lo();
    for (int i = c.lo(); i <= c.hi(); ++i) p.ranks.push_back(c.rank(i));
    for (int i = c.lo(); i < c.hi(); ++i) p.diffs.push_back(TMat(c.d(i)));
    return p;
}

FreeComplex specialize(const PolyComplex& c, const Rat& t) {
    std::vector<Mat> diffs;
    for (auto& d : c.diffs) diffs.push_back(d.at(t));
    return FreeComplex(c.lo, c.ranks, diffs);
}

PolyChainMap tensor_with_ring(const ChainMap& f) {
    PolyChainMap p{tensor_with_ring(f.src), tensor_with_ring(f.tgt), {}};
    for (auto& [i, m] : f.comps) p.comps[i] = TMat(m);
    return p;
}

ChainMap specialize(const PolyChainMap& f, const Rat& t) {
    ChainMap g{specialize(f.src, t), specialize(f.tgt, t), {}};
    for (auto& [i, m] : f.comps) g.comps[i] = m.at(t);
    return g;
}

bool is_complex(const PolyComplex& c) {
    for (int i = c.lo; i + 1 < c.hi(); ++i)
        if (!(c.d(i + 1) * c.d(i)).is_zero()) return false;
    return true;
}

bool is_chain_map(const PolyChainMap& f) {
    int lo = std::min(f.src.lo, f.tgt.lo), hi = std::max(f.src.hi(), f.tgt.hi());
    for (int i = lo - 1; i <= hi; ++i)
        if (!(f.tgt.d(i) * f.at(i) == f.at(i + 1) * f.src.d(i))) return false;
    return true;
}

}  // namespace quadcx
