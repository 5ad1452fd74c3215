#include "quadcx/cliffspin.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "quadcx/gen.hpp"
#include "quadcx/isored.hpp"

namespace quadcx {

namespace {

int popcount(Word w) { return std::popcount(w); }
int high_bit(Word w) { return 31 - std::countl_zero(w); }

using RatMap = std::map<Word, Rat>;

void radd(RatMap& m, Word w, const Rat& c) {
    if (sgn(c) == 0) return;
    auto it = m.find(w);
    if (it == m.end()) {
        m.emplace(w, c);
        return;
    }
    it->second += c;
    if (sgn(it->second) == 0) m.erase(it);
}

// w * b_{j+1}, 0-based j
void right_gen(const Mat& Q, Word w, int j, const Rat& c, RatMap& out) {
    if (w == 0) {
        radd(out, Word(1) << j, c);
        return;
    }
    int last = high_bit(w);
    if (last < j) {
        radd(out, w | (Word(1) << j), c);
        return;
    }
    Word rest = w ^ (Word(1) << last);
    if (last == j) {
        radd(out, rest, Q(j, j) * c);
        return;
    }
    // b_last b_j = 2q(b_j, b_last) - b_j b_last
    radd(out, rest, 2 * Q(j, last) * c);
    RatMap tmp;
    right_gen(Q, rest, j, -c, tmp);
    for (auto& [v, cv] : tmp) radd(out, v | (Word(1) << last), cv);
}

class WordTable {
public:
    explicit WordTable(const Mat& Q) : Q_(Q) {}

    const RatMap& product(Word a, Word b) {
        auto key = std::make_pair(a, b);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        RatMap cur{{a, Rat(1)}};
        for (int j = 0; j < 32; ++j) {
            if (!((b >> j) & 1)) continue;
            RatMap next;
            for (auto& [w, c] : cur) right_gen(Q_, w, j, c, next);
            cur = std::move(next);
        }
        return cache_.emplace(key, std::move(cur)).first->second;
    }

private:
    const Mat& Q_;
    std::map<std::pair<Word, Word>, RatMap> cache_;
};

template <class T>
T scaled(const Rat& s, const T& c) {
    if constexpr (std::is_same_v<T, Rat>) return Rat(s * c);
    else return s * c;
}

void check_same(const QuadSpace& a, const QuadSpace& b) {
    if (a.n != b.n || !(a.Q == b.Q)) fail(Errc::SpaceMismatch, "Clifford elements over different spaces");
}

int perm_sign(const std::vector<int>& p) {
    int inv = 0;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 ? -1 : 1;
}

std::vector<int> bits_of(Word w) {
    std::vector<int> out;
    for (int j = 0; j < 32; ++j)
        if ((w >> j) & 1) out.push_back(j);
    return out;
}

bool is_standard(const QuadSpace& s) { return s.Q == standard_quadspace(s.n).Q; }

void require_standard(const QuadSpace& s) {
    if (!is_standard(s)) fail(Errc::PreconditionFailed, "spinor module needs the standard form");
}

// Coordinates of x in the b-words, as a column of length 2^n.
Mat cl_column(const CliffElt& x) {
    Mat c(1 << x.space.n, 1);
    for (auto& [w, v] : x.coeffs) c(static_cast<int>(w), 0) = v;
    return c;
}

CliffElt from_column(const QuadSpace& s, const Mat& c) {
    CliffElt x{s, {}};
    for (int i = 0; i < c.rows(); ++i) x.add(static_cast<Word>(i), c(i, 0));
    return x;
}

// b_1 .. b_n images of w-words
std::vector<CliffElt> w_words(const QuadSpace& s, const Mat& W) {
    int N = 1 << s.n;
    std::vector<CliffElt> out(N);
    for (int a = 0; a < N; ++a) {
        CliffElt p = cl_scalar(s, 1);
        for (int j : bits_of(static_cast<Word>(a))) p = p * cl_vector(s, W.col(j));
        out[a] = p;
    }
    return out;
}

Rat minor(const Mat& W, Word rows, Word cols) {
    auto r = bits_of(rows), c = bits_of(cols);
    if (r.empty()) return 1;
    return det(W.select_rows(r).select_cols(c));
}

Rat sign_pow(long e) { return e % 2 ? Rat(-1) : Rat(1); }

// single generator on a spinor word; returns (word, coeff), coeff 0 when killed
std::pair<Word, Rat> gen_on_word(int n, int i, Word s) {
    int m = n / 2;
    if (i <= m) {
        Word bit = Word(1) << (i - 1);
        if (!(s & bit)) return {0, Rat(0)};
        int pos = popcount(s & (bit - 1));
        return {s ^ bit, 2 * sign_pow(pos)};
    }
    if (n % 2 == 1 && i == m + 1) return {s, sign_pow(popcount(s))};
    int j = n + 1 - i;
    Word bit = Word(1) << (j - 1);
    if (s & bit) return {0, Rat(0)};
    return {s | bit, sign_pow(popcount(s & (bit - 1)))};
}

Rat pairing_words(Word a, Word b, int n) {
    int m = n / 2;
    Word full = m == 0 ? 0 : ((Word(1) << m) - 1);
    if ((a & b) || (a | b) != full) return 0;
    int ka = popcount(a);
    long inv = 0;
    for (int x : bits_of(a))
        for (int y : bits_of(b))
            if (x > y) ++inv;
    Rat s = sign_pow(inv) * sign_pow(ka * (ka - 1) / 2);
    return n % 2 == 0 ? Rat(s * sign_pow(ka)) : Rat(s * sign_pow(static_cast<long>(m) * ka));
}

// lambda with M = lambda P
Rat scalar_ratio(const Mat& M, const Mat& P) {
    std::optional<Rat> lam;
    for (int i = 0; i < P.rows() && !lam; ++i)
        for (int j = 0; j < P.cols(); ++j)
            if (sgn(P(i, j)) != 0) {
                lam = M(i, j) / P(i, j);
                break;
            }
    if (!lam) fail(Errc::Internal, "zero pairing");
    if (!(M == *lam * P)) fail(Errc::NotScalar, "action does not scale the pairing");
    return *lam;
}

Mat word_matrix(const std::vector<Mat>& gens, Word w, int dim) {
    Mat p = Mat::identity(dim);
    for (int j : bits_of(w)) p = p * gens[j];
    return p;
}

Mat stack(const std::vector<Mat>& ms, int cols) {
    Mat out(0, cols);
    for (auto& m : ms) out = vstack(out, m);
    return out;
}

// rank of the span of the given word matrices, flattened
int word_span_rank(const std::vector<Mat>& gens, int dim, bool even_only, int n) {
    std::vector<Rat> cols;
    int count = 0;
    for (int w = 0; w < (1 << n); ++w) {
        if (even_only && popcount(static_cast<Word>(w)) % 2) continue;
        Mat p = word_matrix(gens, static_cast<Word>(w), dim);
        cols.insert(cols.end(), p.entries().begin(), p.entries().end());
        ++count;
    }
    return rank(Mat(count, dim * dim, std::move(cols)));
}

}  // namespace

QuadSpace make_quadspace(const Mat& Q) {
    if (!Q.is_square()) fail(Errc::ShapeMismatch, "quadratic form must be square");
    if (!(Q == Q.transpose())) fail(Errc::PreconditionFailed, "quadratic form must be symmetric");
    if (Q.rows() > 30) fail(Errc::CostGuard, "rank too large");
    if (sgn(det(Q)) == 0) fail(Errc::Singular, "quadratic form is degenerate");
    return {Q.rows(), Q};
}

QuadSpace standard_quadspace(int n) {
    if (n < 0) fail(Errc::RangeError, "negative rank");
    return make_quadspace(antidiagonal(n));
}

bool is_orientation(const QuadSpace& s, const Orientation& o) { return is_orientation(s.Q, o.o); }

Orientation standard_orientation(int n) {
    int m = n / 2;
    std::vector<int> p;
    for (int i = 1; i <= m; ++i) {
        p.push_back(i);
        p.push_back(n + 1 - i);
    }
    if (n % 2) p.push_back(m + 1);
    return {Rat(perm_sign(p))};
}

template <class T>
void CliffEltT<T>::add(Word w, const T& c) {
    if (coef_is_zero(c)) return;
    auto it = coeffs.find(w);
    if (it == coeffs.end()) {
        coeffs.emplace(w, c);
        return;
    }
    it->second += c;
    if (coef_is_zero(it->second)) coeffs.erase(it);
}

template <class T>
T CliffEltT<T>::coeff(Word w, const T& zero) const {
    auto it = coeffs.find(w);
    return it == coeffs.end() ? zero : it->second;
}

template <class T>
bool CliffEltT<T>::is_even() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](auto& kv) { return popcount(kv.first) % 2 == 0; });
}

template <class T>
CliffEltT<T> clifford_add(const CliffEltT<T>& x, const CliffEltT<T>& y) {
    check_same(x.space, y.space);
    CliffEltT<T> r = x;
    for (auto& [w, c] : y.coeffs) r.add(w, c);
    return r;
}

template <class T>
CliffEltT<T> clifford_scale(const Rat& s, const CliffEltT<T>& x) {
    CliffEltT<T> r{x.space, {}};
    for (auto& [w, c] : x.coeffs) r.add(w, scaled(s, c));
    return r;
}

template <class T>
CliffEltT<T> clifford_mul(const CliffEltT<T>& x, const CliffEltT<T>& y) {
    check_same(x.space, y.space);
    WordTable table(x.space.Q);
    CliffEltT<T> r{x.space, {}};
    for (auto& [a, ca] : x.coeffs)
        for (auto& [b, cb] : y.coeffs) {
            T c = ca * cb;
            for (auto& [w, cw] : table.product(a, b)) r.add(w, scaled(cw, c));
        }
    return r;
}

template <class T>
CliffEltT<T> sigma(const CliffEltT<T>& x) {
    WordTable table(x.space.Q);
    CliffEltT<T> r{x.space, {}};
    for (auto& [a, ca] : x.coeffs) {
        // (-1)^k b_{a_k} ... b_{a_1}
        auto bits = bits_of(a);
        RatMap cur{{0, sign_pow(static_cast<long>(bits.size()))}};
        for (auto it = bits.rbegin(); it != bits.rend(); ++it) {
            RatMap next;
            for (auto& [w, c] : cur) right_gen(x.space.Q, w, *it, c, next);
            cur = std::move(next);
        }
        for (auto& [w, cw] : cur) r.add(w, scaled(cw, ca));
    }
    return r;
}

template struct CliffEltT<Rat>;
template struct CliffEltT<MPoly>;
template CliffElt clifford_add(const CliffElt&, const CliffElt&);
template PolyCliffElt clifford_add(const PolyCliffElt&, const PolyCliffElt&);
template CliffElt clifford_scale(const Rat&, const CliffElt&);
template PolyCliffElt clifford_scale(const Rat&, const PolyCliffElt&);
template CliffElt clifford_mul(const CliffElt&, const CliffElt&);
template PolyCliffElt clifford_mul(const PolyCliffElt&, const PolyCliffElt&);
template CliffElt sigma(const CliffElt&);
template PolyCliffElt sigma(const PolyCliffElt&);

CliffElt operator+(const CliffElt& a, const CliffElt& b) { return clifford_add(a, b); }
CliffElt operator-(const CliffElt& a, const CliffElt& b) { return clifford_add(a, clifford_scale(Rat(-1), b)); }
CliffElt operator*(const CliffElt& a, const CliffElt& b) { return clifford_mul(a, b); }
CliffElt operator*(const Rat& s, const CliffElt& a) { return clifford_scale(s, a); }

CliffElt cl_scalar(const QuadSpace& s, const Rat& c) {
    CliffElt x{s, {}};
    x.add(0, c);
    return x;
}

CliffElt cl_gen(const QuadSpace& s, int i) {
    if (i < 1 || i > s.n) fail(Errc::RangeError, "generator index out of range");
    return cl_word(s, Word(1) << (i - 1));
}

CliffElt cl_vector(const QuadSpace& s, const Mat& v) {
    if (v.rows() != s.n || v.cols() != 1) fail(Errc::ShapeMismatch, "vector has the wrong length");
    CliffElt x{s, {}};
    for (int i = 0; i < s.n; ++i) x.add(Word(1) << i, v(i, 0));
    return x;
}

CliffElt cl_word(const QuadSpace& s, Word w, const Rat& c) {
    if (s.n < 32 && (w >> s.n)) fail(Errc::RangeError, "word uses a missing generator");
    CliffElt x{s, {}};
    x.add(w, c);
    return x;
}

std::optional<Mat> cl_as_vector(const CliffElt& x) {
    Mat v(x.space.n, 1);
    for (auto& [w, c] : x.coeffs) {
        if (popcount(w) != 1) return std::nullopt;
        v(high_bit(w), 0) = c;
    }
    return v;
}

std::optional<CliffElt> clifford_inverse(const CliffElt& x) {
    CliffElt s = sigma(x) * x;
    if (s.coeffs.size() == 1 && s.coeffs.count(0)) {
        CliffElt inv = clifford_scale(Rat(1 / s.coeffs.at(0)), sigma(x));
        if (x * inv == cl_scalar(x.space, 1)) return inv;
    }
    int N = 1 << x.space.n;
    if (x.space.n > 8) fail(Errc::CostGuard, "inverse by linear solve needs n <= 8");
    Mat L(N, N);
    for (int b = 0; b < N; ++b) L.set_block(0, b, cl_column(x * cl_word(x.space, static_cast<Word>(b))));
    Mat one(N, 1);
    one(0, 0) = 1;
    auto y = solve_linear(L, one);
    if (!y) return std::nullopt;
    return from_column(x.space, *y);
}

CliffElt volume_element(int n) {
    QuadSpace s = standard_quadspace(n);
    int m = n / 2;
    CliffElt w = cl_scalar(s, 1);
    for (int i = 1; i <= m; ++i) w = w * (cl_gen(s, i) * cl_gen(s, n + 1 - i) - cl_scalar(s, 1));
    if (n % 2) w = w * cl_gen(s, m + 1);
    return w;
}

CliffElt volume_from_orientation(const QuadSpace& s, const Orientation& o) {
    Word full = s.n == 0 ? 0 : static_cast<Word>((std::uint64_t(1) << s.n) - 1);
    return gamma_inverse(s, {{full, o.o}}, orthogonal_basis(s.Q));
}

Mat orthogonal_basis(const Mat& Q) {
    int n = Q.rows();
    Mat W = Mat::identity(n);
    for (int i = 0; i < n; ++i) {
        Mat M = W.transpose() * Q * W;
        int piv = -1;
        for (int j = i; j < n && piv < 0; ++j)
            if (sgn(M(j, j)) != 0) piv = j;
        if (piv < 0) {
            for (int j = i; j < n && piv < 0; ++j)
                for (int l = j + 1; l < n; ++l)
                    if (sgn(M(j, l)) != 0) {
                        for (int r = 0; r < n; ++r) W(r, j) += W(r, l);
                        piv = j;
                        break;
                    }
            if (piv < 0) break;  // remaining block is zero
            M = W.transpose() * Q * W;
        }
        if (piv != i)
            for (int r = 0; r < n; ++r) std::swap(W(r, i), W(r, piv));
        M = W.transpose() * Q * W;
        for (int l = i + 1; l < n; ++l) {
            Rat f = M(i, l) / M(i, i);
            if (sgn(f) == 0) continue;
            for (int r = 0; r < n; ++r) W(r, l) -= f * W(r, i);
        }
    }
    return W;
}

std::map<Word, Rat> gamma(const CliffElt& x, const Mat& W) {
    const QuadSpace& s = x.space;
    int N = 1 << s.n;
    auto ws = w_words(s, W);
    Mat C(N, N);
    for (int a = 0; a < N; ++a) C.set_block(0, a, cl_column(ws[a]));
    Mat y = solve_or_throw(C, cl_column(x), "w-word coordinates");
    RatMap out;
    for (int a = 0; a < N; ++a) {
        if (sgn(y(a, 0)) == 0) continue;
        for (int b = 0; b < N; ++b)
            if (popcount(static_cast<Word>(b)) == popcount(static_cast<Word>(a)))
                radd(out, static_cast<Word>(b), y(a, 0) * minor(W, static_cast<Word>(b), static_cast<Word>(a)));
    }
    return out;
}

CliffElt gamma_inverse(const QuadSpace& s, const std::map<Word, Rat>& wedge, const Mat& W) {
    int N = 1 << s.n;
    Mat Winv = inverse_or_throw(W);
    auto ws = w_words(s, W);
    CliffElt x{s, {}};
    for (auto& [b, c] : wedge)
        for (int a = 0; a < N; ++a) {
            if (popcount(static_cast<Word>(a)) != popcount(b)) continue;
            Rat coef = c * minor(Winv, static_cast<Word>(a), b);
            if (sgn(coef) != 0) x = x + clifford_scale(coef, ws[a]);
        }
    return x;
}

int filtration_degree(const CliffElt& x) {
    int d = -1;
    for (auto& [w, c] : x.coeffs) d = std::max(d, popcount(w));
    return d;
}

bool operator==(const SpinorElt& a, const SpinorElt& b) { return a.m == b.m && a.coeffs == b.coeffs; }

SpinorElt spinor_action(const CliffElt& c, const SpinorElt& s) {
    require_standard(c.space);
    int n = c.space.n;
    if (s.m != n / 2) fail(Errc::ShapeMismatch, "spinor of the wrong rank");
    SpinorElt out{s.m, {}};
    for (auto& [w, cw] : c.coeffs) {
        auto bits = bits_of(w);
        RatMap cur = s.coeffs;
        for (auto it = bits.rbegin(); it != bits.rend() && !cur.empty(); ++it) {
            RatMap next;
            for (auto& [v, cv] : cur) {
                auto [nv, k] = gen_on_word(n, *it + 1, v);
                radd(next, nv, k * cv);
            }
            cur = std::move(next);
        }
        for (auto& [v, cv] : cur) radd(out.coeffs, v, cw * cv);
    }
    return out;
}

Mat spinor_gen_matrix(int n, int i) {
    int D = 1 << (n / 2);
    Mat A(D, D);
    for (int s = 0; s < D; ++s) {
        auto [w, k] = gen_on_word(n, i, static_cast<Word>(s));
        if (sgn(k) != 0) A(static_cast<int>(w), s) = k;
    }
    return A;
}

Mat spinor_action_matrix(const CliffElt& c) {
    require_standard(c.space);
    int n = c.space.n, D = 1 << (n / 2);
    std::vector<Mat> gens;
    for (int i = 1; i <= n; ++i) gens.push_back(spinor_gen_matrix(n, i));
    Mat A(D, D);
    for (auto& [w, cw] : c.coeffs) A += cw * word_matrix(gens, w, D);
    return A;
}

bool action_is_iso(int n) {
    if (n < 0) fail(Errc::RangeError, "negative rank");
    if (n > 8) fail(Errc::CostGuard, "action_is_iso needs n <= 8");
    int D = 1 << (n / 2);
    std::vector<Mat> gens;
    for (int i = 1; i <= n; ++i) gens.push_back(spinor_gen_matrix(n, i));
    return word_span_rank(gens, D, n % 2 == 1, n) == D * D;
}

Rat spinor_pairing(const SpinorElt& x, const SpinorElt& y, int n) {
    if (x.m != n / 2 || y.m != n / 2) fail(Errc::ShapeMismatch, "spinor of the wrong rank");
    Rat total = 0;
    for (auto& [a, ca] : x.coeffs)
        for (auto& [b, cb] : y.coeffs) total += ca * cb * pairing_words(a, b, n);
    return total;
}

Mat spinor_pairing_matrix(int n) {
    int D = 1 << (n / 2);
    Mat P(D, D);
    for (int a = 0; a < D; ++a)
        for (int b = 0; b < D; ++b) P(a, b) = pairing_words(static_cast<Word>(a), static_cast<Word>(b), n);
    return P;
}

Mat lipschitz_so_part(const CliffElt& x) {
    if (!x.is_even()) fail(Errc::PreconditionFailed, "Lipschitz elements are even");
    auto inv = clifford_inverse(x);
    if (!inv) fail(Errc::Singular, "element is not a unit");
    const QuadSpace& s = x.space;
    Mat phi(s.n, s.n);
    for (int j = 1; j <= s.n; ++j) {
        auto v = cl_as_vector(x * cl_gen(s, j) * *inv);
        if (!v) fail(Errc::NotLipschitz, "conjugation leaves the vectors");
        phi.set_block(0, j - 1, *v);
    }
    if (!(phi.transpose() * s.Q * phi == s.Q) || det(phi) != 1)
        fail(Errc::Internal, "conjugation is not in SO");
    return phi;
}

Rat spinor_norm(const CliffElt& x) {
    CliffElt s = sigma(x) * x;
    if (s.is_zero()) return 0;
    if (s.coeffs.size() != 1 || !s.coeffs.count(0)) fail(Errc::NotScalar, "sigma(x) x is not a scalar");
    return s.coeffs.at(0);
}

Rat spinor_norm_via_pairing(const CliffElt& x) {
    require_standard(x.space);
    Mat F = spinor_action_matrix(x);
    Mat P = spinor_pairing_matrix(x.space.n);
    return scalar_ratio(F.transpose() * P * F, P);
}

std::vector<Word> ann_K(int k, int n) {
    if (k < 0 || n < 0 || 2 * k > n) fail(Errc::RangeError, "need 0 <= 2k <= n");
    int m = n / 2;
    std::vector<Word> out;
    for (Word w = 0; w < (Word(1) << (m - k)); ++w) out.push_back(w << k);
    return out;
}

Word ann_shift(Word w, int k) {
    if (w & ((Word(1) << k) - 1)) fail(Errc::RangeError, "word is not in Ann(K)");
    return w >> k;
}

SpinDatum standard_spin_datum(int n) {
    SpinDatum d{standard_quadspace(n), {}, spinor_pairing_matrix(n)};
    for (int i = 1; i <= n; ++i) d.action.push_back(spinor_gen_matrix(n, i));
    return d;
}

Mat datum_action(const SpinDatum& d, const CliffElt& c) {
    check_same(d.space, c.space);
    int D = d.eta.rows();
    Mat A(D, D);
    for (auto& [w, cw] : c.coeffs) A += cw * word_matrix(d.action, w, D);
    return A;
}

SpinDatumReport validate_spin_datum(const SpinDatum& d) {
    SpinDatumReport r;
    int n = d.space.n, D = d.eta.rows();
    if (!is_standard(d.space) || static_cast<int>(d.action.size()) != n || D != (1 << (n / 2)) ||
        !d.eta.is_square())
        return r;
    for (auto& a : d.action)
        if (a.rows() != D || a.cols() != D) return r;
    r.relations = true;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            if (!(d.action[i] * d.action[j] + d.action[j] * d.action[i] == 2 * d.space.Q(i, j) * Mat::identity(D)))
                r.relations = false;
    Mat w = datum_action(d, volume_element(n));
    r.volume = n % 2 ? w == Mat::identity(D) : w * w == Mat::identity(D);
    r.balanced = true;
    if (n % 2 == 0) {
        for (auto& a : d.action)
            if (!(a.transpose() * d.eta + d.eta * a).is_zero()) r.balanced = false;
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                Mat c = d.action[i] * d.action[j];
                if (!((c.transpose() * d.eta) == d.eta * d.action[j] * d.action[i])) r.balanced = false;
            }
    }
    if (n > 8) fail(Errc::CostGuard, "spin datum check needs n <= 8");
    r.nondegenerate = !d.eta.is_zero() && word_span_rank(d.action, D, n % 2 == 1, n) == D * D;
    return r;
}

ReducedDatum reduce_spin_datum(const SpinDatum& d, int k) {
    int n = d.space.n, D = d.eta.rows();
    if (k < 0 || 2 * k >= n) {
        if (k == 0) return {d, Mat::identity(D)};
        fail(Errc::RangeError, "need 0 <= 2k < n");
    }
    if (k == 0) return {d, Mat::identity(D)};
    std::vector<Mat> kill(d.action.begin(), d.action.begin() + k);
    Mat annK = stack(kill, D);
    Mat basis;
    std::vector<int> parity;
    if (n % 2 == 0) {
        Mat w = datum_action(d, volume_element(n));
        Mat even = kernel_basis(vstack(annK, w - Mat::identity(D)));
        Mat odd = kernel_basis(vstack(annK, w + Mat::identity(D)));
        basis = hstack(even, odd);
        parity.assign(even.cols(), 0);
        parity.insert(parity.end(), odd.cols(), 1);
    } else {
        basis = kernel_basis(annK);
        parity.assign(basis.cols(), 0);
    }
    if (basis.cols() != (1 << (n / 2 - k))) fail(Errc::Internal, "Ann(K) has the wrong dimension");
    ReducedDatum out;
    out.inclusion = basis;
    out.datum.space = standard_quadspace(n - 2 * k);
    for (int i = 1; i <= n - 2 * k; ++i)
        out.datum.action.push_back(solve_or_throw(basis, d.action[i + k - 1] * basis, "Ann(K) is not preserved"));
    Mat fk = Mat::identity(D);
    for (int j = 1; j <= k; ++j) fk = fk * d.action[n - j];
    Mat eta = basis.transpose() * d.eta * fk * basis;
    if (n % 2 == 0)
        for (int r = 0; r < eta.rows(); ++r)
            if ((k * parity[r]) % 2)
                for (int c = 0; c < eta.cols(); ++c) eta(r, c) = -eta(r, c);
    out.datum.eta = eta;
    return out;
}

PiTw pi_tw(const Mat& g, const Rat& t, int k) {
    if (!g.is_square()) fail(Errc::ShapeMismatch, "g must be square");
    int n = g.rows();
    if (k < 0 || 2 * k > n) fail(Errc::RangeError, "need 0 <= 2k <= n");
    if (sgn(t) == 0) fail(Errc::InvalidArgument, "t must be nonzero");
    Mat B = antidiagonal(n);
    if (!(g.transpose() * B * g == B) || det(g) != 1) fail(Errc::NotInSubgroup, "g is not in SO(n)");
    if (!g.block(k, 0, n - k, k).is_zero()) fail(Errc::NotInSubgroup, "g does not preserve K");
    Mat mid = g.block(k, k, n - 2 * k, n - 2 * k);
    Mat Bm = antidiagonal(n - 2 * k);
    if (!(mid.transpose() * Bm * mid == Bm) || det(mid) != 1) fail(Errc::Internal, "middle block is not in SO");
    return {mid, t * det(g.block(0, 0, k, k))};
}

bool check_pi_tw_square(const CliffElt& x, int k) {
    require_standard(x.space);
    int n = x.space.n;
    auto ann = ann_K(k, n);
    Mat phi = lipschitz_so_part(x);
    if (!phi.block(k, 0, n - k, k).is_zero()) fail(Errc::NotInSubgroup, "conjugation does not preserve K");
    Mat F = spinor_action_matrix(x);
    int Dr = static_cast<int>(ann.size());
    Mat Fr(Dr, Dr);
    std::vector<bool> in_ann(F.rows(), false);
    for (Word w : ann) in_ann[w] = true;
    for (Word a : ann)
        for (int r = 0; r < F.rows(); ++r) {
            if (sgn(F(r, static_cast<int>(a))) == 0) continue;
            if (!in_ann[r]) fail(Errc::NotInSubgroup, "action does not preserve Ann(K)");
            Fr(static_cast<int>(ann_shift(static_cast<Word>(r), k)), static_cast<int>(ann_shift(a, k))) =
                F(r, static_cast<int>(a));
        }
    Mat P = spinor_pairing_matrix(n - 2 * k);
    Rat reduced = scalar_ratio(Fr.transpose() * P * Fr, P);
    return reduced == det(phi.block(0, 0, k, k)) * spinor_norm(x);
}

}  // namespace quadcx
