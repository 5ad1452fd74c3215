#include "quadcx/linalg.hpp"

#include <utility>

namespace quadcx {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::ShapeMismatch: return "ShapeMismatch";
        case Errc::NotAComplex: return "NotAComplex";
        case Errc::NoSolution: return "NoSolution";
        case Errc::Singular: return "Singular";
        case Errc::NotQis: return "NotQis";
        case Errc::PreconditionFailed: return "PreconditionFailed";
        case Errc::RankCondition: return "RankCondition";
        case Errc::HomotopyIdentityFails: return "HomotopyIdentityFails";
        case Errc::NoHomotopy: return "NoHomotopy";
        case Errc::Mismatch: return "Mismatch";
        case Errc::NotAcyclic: return "NotAcyclic";
        case Errc::NotAnOrientation: return "NotAnOrientation";
        case Errc::SpaceMismatch: return "SpaceMismatch";
        case Errc::CostGuard: return "CostGuard";
        case Errc::NotLipschitz: return "NotLipschitz";
        case Errc::NotScalar: return "NotScalar";
        case Errc::RangeError: return "RangeError";
        case Errc::NotInSubgroup: return "NotInSubgroup";
        case Errc::NotComposable: return "NotComposable";
        case Errc::OddRank: return "OddRank";
        case Errc::IsotropyFailure: return "IsotropyFailure";
        case Errc::NotHomogeneous: return "NotHomogeneous";
        case Errc::NotMonotone: return "NotMonotone";
        case Errc::NotUnipotent: return "NotUnipotent";
        case Errc::UnknownSuite: return "UnknownSuite";
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::UnsupportedRing: return "UnsupportedRing";
        case Errc::SplitMismatch: return "SplitMismatch";
        case Errc::HalfRankIsotropic: return "HalfRankIsotropic";
        case Errc::Internal: return "Internal";
    }
    return "Unknown";
}

Rat make_rat(long n, long d) {
    if (d == 0) fail(Errc::InvalidArgument, "zero denominator");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

std::string rat_str(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat rat_parse(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0 || (s.find('/') != std::string::npos && r.get_den() == 0))
        fail(Errc::InvalidArgument, "bad rational '" + s + "'");
    r.canonicalize();
    return r;
}

Mat::Mat(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) fail(Errc::ShapeMismatch, "negative matrix dimension");
}

Mat::Mat(int rows, int cols, std::vector<Rat> entries) : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != static_cast<size_t>(rows) * cols) fail(Errc::ShapeMismatch, "entry count does not match shape");
}

Mat::Mat(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
    for (auto& r : rows) {
        if (static_cast<int>(r.size()) != cols_) fail(Errc::ShapeMismatch, "ragged matrix literal");
        for (long v : r) e_.emplace_back(v);
    }
}

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Mat Mat::column(const std::vector<Rat>& v) { return Mat(static_cast<int>(v.size()), 1, v); }

Mat Mat::transpose() const {
    Mat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Mat Mat::block(int r0, int c0, int nr, int nc) const {
    if (r0 < 0 || c0 < 0 || r0 + nr > rows_ || c0 + nc > cols_) fail(Errc::ShapeMismatch, "block out of range");
    Mat b(nr, nc);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

void Mat::set_block(int r0, int c0, const Mat& b) {
    if (r0 < 0 || c0 < 0 || r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) fail(Errc::ShapeMismatch, "set_block out of range");
    for (int i = 0; i < b.rows_; ++i)
        for (int j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

Mat Mat::select_cols(const std::vector<int>& js) const {
    Mat b(rows_, static_cast<int>(js.size()));
    for (int i = 0; i < rows_; ++i)
        for (size_t j = 0; j < js.size(); ++j) b(i, static_cast<int>(j)) = (*this)(i, js[j]);
    return b;
}

Mat Mat::select_rows(const std::vector<int>& is) const {
    Mat b(static_cast<int>(is.size()), cols_);
    for (size_t i = 0; i < is.size(); ++i)
        for (int j = 0; j < cols_; ++j) b(static_cast<int>(i), j) = (*this)(is[i], j);
    return b;
}

bool Mat::is_zero() const {
    for (auto& x : e_)
        if (sgn(x) != 0) return false;
    return true;
}

Mat& Mat::operator+=(const Mat& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) fail(Errc::ShapeMismatch, "matrix sum shape mismatch");
    for (size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
}

Mat& Mat::operator-=(const Mat& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) fail(Errc::ShapeMismatch, "matrix difference shape mismatch");
    for (size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
    return *this;
}

Mat& Mat::operator*=(const Rat& s) {
    for (auto& x : e_) x *= s;
    return *this;
}

bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
}

Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) fail(Errc::ShapeMismatch, "matrix product shape mismatch");
    Mat c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            const Rat& x = a(i, k);
            if (sgn(x) == 0) continue;
            for (int j = 0; j < b.cols_; ++j)
                if (sgn(b(k, j)) != 0) c(i, j) += x * b(k, j);
        }
    return c;
}

Mat hstack(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) fail(Errc::ShapeMismatch, "hstack row mismatch");
    Mat m(a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

Mat vstack(const Mat& a, const Mat& b) {
    if (a.cols() != b.cols()) fail(Errc::ShapeMismatch, "vstack column mismatch");
    Mat m(a.rows() + b.rows(), a.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), 0, b);
    return m;
}

Mat block_diag(const Mat& a, const Mat& b) {
    Mat m(a.rows() + b.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), a.cols(), b);
    return m;
}

Mat block2(const Mat& a, const Mat& b, const Mat& c, const Mat& d) {
    if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() || b.cols() != d.cols())
        fail(Errc::ShapeMismatch, "block2 shape mismatch");
    return vstack(hstack(a, b), hstack(c, d));
}

Rref rref(const Mat& m) {
    Rref out{m, {}};
    Mat& r = out.r;
    int row = 0;
    for (int c = 0; c < r.cols() && row < r.rows(); ++c) {
        int p = -1;
        for (int i = row; i < r.rows(); ++i)
            if (sgn(r(i, c)) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != row)
            for (int j = 0; j < r.cols(); ++j) std::swap(r(p, j), r(row, j));
        Rat inv = 1 / r(row, c);
        for (int j = c; j < r.cols(); ++j) r(row, j) *= inv;
        for (int i = 0; i < r.rows(); ++i) {
            if (i == row || sgn(r(i, c)) == 0) continue;
            Rat f = r(i, c);
            for (int j = c; j < r.cols(); ++j)
                if (sgn(r(row, j)) != 0) r(i, j) -= f * r(row, j);
        }
        out.pivots.push_back(c);
        ++row;
    }
    return out;
}

int rank(const Mat& m) { return static_cast<int>(rref(m).pivots.size()); }

Mat kernel_basis(const Mat& m) {
    Rref rr = rref(m);
    int n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (int p : rr.pivots) is_pivot[p] = true;
    std::vector<int> free;
    for (int j = 0; j < n; ++j)
        if (!is_pivot[j]) free.push_back(j);
    Mat k(n, static_cast<int>(free.size()));
    for (size_t t = 0; t < free.size(); ++t) {
        int f = free[t];
        k(f, static_cast<int>(t)) = 1;
        for (size_t r = 0; r < rr.pivots.size(); ++r) k(rr.pivots[r], static_cast<int>(t)) = -rr.r(static_cast<int>(r), f);
    }
    return k;
}

std::optional<Mat> solve_linear(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) fail(Errc::ShapeMismatch, "solve_linear row mismatch");
    Rref rr = rref(hstack(a, b));
    int n = a.cols();
    for (int p : rr.pivots)
        if (p >= n) return std::nullopt;
    Mat x(n, b.cols());
    for (size_t r = 0; r < rr.pivots.size(); ++r)
        for (int j = 0; j < b.cols(); ++j) x(rr.pivots[r], j) = rr.r(static_cast<int>(r), n + j);
    return x;
}

Mat solve_or_throw(const Mat& a, const Mat& b, const char* what) {
    auto x = solve_linear(a, b);
    if (!x) fail(Errc::NoSolution, what);
    return *x;
}

Rat det(const Mat& m) {
    if (!m.is_square()) fail(Errc::ShapeMismatch, "det of non-square matrix");
    Mat r = m;
    int n = r.rows();
    Rat d = 1;
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (sgn(r(i, c)) != 0) { p = i; break; }
        if (p < 0) return 0;
        if (p != c) {
            for (int j = 0; j < n; ++j) std::swap(r(p, j), r(c, j));
            d = -d;
        }
        d *= r(c, c);
        for (int i = c + 1; i < n; ++i) {
            if (sgn(r(i, c)) == 0) continue;
            Rat f = r(i, c) / r(c, c);
            for (int j = c; j < n; ++j) r(i, j) -= f * r(c, j);
        }
    }
    return d;
}

std::optional<Mat> inverse(const Mat& m) {
    if (!m.is_square()) fail(Errc::ShapeMismatch, "inverse of non-square matrix");
    int n = m.rows();
    Rref rr = rref(hstack(m, Mat::identity(n)));
    if (static_cast<int>(rr.pivots.size()) < n || (n > 0 && rr.pivots[n - 1] != n - 1)) return std::nullopt;
    return rr.r.block(0, n, n, n);
}

Mat inverse_or_throw(const Mat& m) {
    auto x = inverse(m);
    if (!x) fail(Errc::Singular, "matrix is singular");
    return *x;
}

Mat image_basis(const Mat& m) { return m.select_cols(rref(m).pivots); }

Mat canonical_basis(const Mat& span) {
    Mat ann = kernel_basis(span.transpose());
    return kernel_basis(ann.transpose().rows() ? ann.transpose() : Mat(0, span.rows()));
}

bool span_contains(const Mat& span, const Mat& m) {
    if (m.cols() == 0) return true;
    return rank(hstack(span, m)) == rank(span);
}

bool same_span(const Mat& a, const Mat& b) {
    int ra = rank(a);
    return ra == rank(b) && rank(hstack(a, b)) == ra;
}

std::vector<int> free_rows(const Mat& canonical) {
    std::vector<int> out;
    for (int j = 0; j < canonical.cols(); ++j) {
        int last = -1;
        for (int i = 0; i < canonical.rows(); ++i)
            if (sgn(canonical(i, j)) != 0) last = i;
        out.push_back(last);
    }
    return out;
}

}  // namespace quadcx
