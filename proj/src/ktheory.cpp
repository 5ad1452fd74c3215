#include "quadcx/ktheory.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "quadcx/gen.hpp"

namespace quadcx {

namespace {

using Table = std::vector<std::vector<std::vector<Rat>>>;

void check_elt(const AugmentedRing& A, const AlgElt& a) {
    if (static_cast<int>(a.size()) != A.r) fail(Errc::ShapeMismatch, "element has wrong rank");
}

AlgElt basis_mul(const Table& c, int r, const AlgElt& a, const AlgElt& b) {
    AlgElt out(r, Rat(0));
    for (int i = 0; i < r; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < r; ++j) {
            if (b[j] == 0) continue;
            Rat s = a[i] * b[j];
            for (int k = 0; k < r; ++k)
                if (c[i][j][k] != 0) out[k] += s * c[i][j][k];
        }
    }
    return out;
}

AlgElt unit_vec(int r, int i) {
    AlgElt e(r, Rat(0));
    e[i] = 1;
    return e;
}

Mat as_col(const AlgElt& a) { return Mat::column(a); }

AlgElt from_col(const Mat& m) {
    AlgElt out(m.rows());
    for (int i = 0; i < m.rows(); ++i) out[i] = m(i, 0);
    return out;
}

Rat binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rat(r);
}

std::vector<int> prime_factors(int n) {
    std::vector<int> out;
    for (int p = 2; p * p <= n; ++p)
        while (n % p == 0) {
            out.push_back(p);
            n /= p;
        }
    if (n > 1) out.push_back(n);
    return out;
}

// degree-wise series arithmetic mod Z^{D+1}
Series series_mul(const Series& a, const Series& b, int D) {
    Series out(D + 1, Rat(0));
    for (size_t i = 0; i < a.size() && static_cast<int>(i) <= D; ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size() && static_cast<int>(i + j) <= D; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

AlgElt eval_series(const AugmentedRing& A, const Series& s, const AlgElt& z) {
    AlgElt out(A.r, Rat(0)), pw = alg_one(A);
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] != 0) out = alg_add(out, alg_scale(s[i], pw));
        pw = alg_mul(A, pw, z);
    }
    return out;
}

void require_unipotent(const AugmentedRing& A, const AlgElt& a) {
    check_elt(A, a);
    if (augment(A, a) != 1) fail(Errc::NotUnipotent, "element is not congruent to 1 modulo the augmentation ideal");
}

}  // namespace

AugmentedRing make_augmented_ring(Table c, AlgElt augmentation) {
    int r = static_cast<int>(c.size());
    if (r == 0) fail(Errc::InvalidArgument, "rank must be positive");
    if (static_cast<int>(augmentation.size()) != r) fail(Errc::ShapeMismatch, "augmentation has wrong length");
    for (auto& row : c) {
        if (static_cast<int>(row.size()) != r) fail(Errc::ShapeMismatch, "structure constants not r x r x r");
        for (auto& v : row)
            if (static_cast<int>(v.size()) != r) fail(Errc::ShapeMismatch, "structure constants not r x r x r");
    }
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            if (c[i][j] != c[j][i]) fail(Errc::PreconditionFailed, "not commutative");
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k) {
                AlgElt ei = unit_vec(r, i), ej = unit_vec(r, j), ek = unit_vec(r, k);
                if (basis_mul(c, r, basis_mul(c, r, ei, ej), ek) != basis_mul(c, r, ei, basis_mul(c, r, ej, ek)))
                    fail(Errc::PreconditionFailed, "not associative");
            }
    // unit: sum_i u_i c[i][j][k] = delta_jk
    Mat M(r * r, r), rhs(r * r, 1);
    for (int j = 0; j < r; ++j)
        for (int k = 0; k < r; ++k) {
            for (int i = 0; i < r; ++i) M(j * r + k, i) = c[i][j][k];
            rhs(j * r + k, 0) = j == k ? 1 : 0;
        }
    auto u = solve_linear(M, rhs);
    if (!u) fail(Errc::PreconditionFailed, "no unit");
    AugmentedRing A{r, std::move(c), std::move(augmentation), from_col(*u)};
    if (augment(A, A.unit) != 1) fail(Errc::PreconditionFailed, "augmentation does not preserve the unit");
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            if (augment(A, basis_mul(A.c, r, unit_vec(r, i), unit_vec(r, j))) != A.augmentation[i] * A.augmentation[j])
                fail(Errc::PreconditionFailed, "augmentation is not multiplicative");
    if (nilpotency_index(A) > r) fail(Errc::PreconditionFailed, "augmentation ideal is not nilpotent");
    return A;
}

int nilpotency_index(const AugmentedRing& A) {
    Mat eps(1, A.r);
    for (int i = 0; i < A.r; ++i) eps(0, i) = A.augmentation[i];
    Mat I = kernel_basis(eps);
    Mat power = I;
    for (int k = 1; k <= A.r + 1; ++k) {
        if (rank(power) == 0) return k;
        Mat next(A.r, 0);
        for (int a = 0; a < power.cols(); ++a)
            for (int b = 0; b < I.cols(); ++b)
                next = hstack(next, as_col(alg_mul(A, from_col(power.col(a)), from_col(I.col(b)))));
        power = image_basis(next);
    }
    return A.r + 2;
}

AugmentedRing dual_numbers() { return truncated_polynomials(1, 1); }

AugmentedRing truncated_polynomials(int v, int d) {
    if (v < 1 || d < 0) fail(Errc::RangeError, "need v >= 1 and d >= 0");
    std::vector<std::vector<int>> monos;
    for (int deg = 0; deg <= d; ++deg) {
        std::vector<int> e(v, 0);
        auto rec = [&](auto&& self, int at, int left) -> void {
            if (at == v - 1) {
                e[at] = left;
                monos.push_back(e);
                return;
            }
            for (int a = left; a >= 0; --a) {
                e[at] = a;
                self(self, at + 1, left - a);
            }
        };
        rec(rec, 0, deg);
    }
    int r = static_cast<int>(monos.size());
    if (r > 40) fail(Errc::CostGuard, "truncated polynomial algebra too large");
    std::map<std::vector<int>, int> pos;
    for (int i = 0; i < r; ++i) pos[monos[i]] = i;
    Table c(r, std::vector<std::vector<Rat>>(r, std::vector<Rat>(r, Rat(0))));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            std::vector<int> e(v);
            for (int t = 0; t < v; ++t) e[t] = monos[i][t] + monos[j][t];
            auto it = pos.find(e);
            if (it != pos.end()) c[i][j][it->second] = 1;
        }
    return make_augmented_ring(std::move(c), unit_vec(r, 0));
}

AugmentedRing random_augmented_ring(std::uint64_t seed, int r) {
    if (r < 1 || r > 12) fail(Errc::RangeError, "rank must be in [1, 12]");
    Gen g(seed);
    for (int attempt = 0; attempt < 100; ++attempt) {
        // monomial algebra on a random order ideal, then a random change of basis
        int v = g.uniform(1, 3);
        std::vector<std::vector<int>> monos{std::vector<int>(v, 0)};
        std::set<std::vector<int>> have(monos.begin(), monos.end());
        while (static_cast<int>(monos.size()) < r) {
            std::vector<std::vector<int>> corners;
            for (auto& m : monos)
                for (int t = 0; t < v; ++t) {
                    auto e = m;
                    ++e[t];
                    if (have.count(e)) continue;
                    bool ok = true;
                    for (int s = 0; s < v && ok; ++s)
                        if (e[s] > 0) {
                            auto parent = e;
                            --parent[s];
                            ok = have.count(parent) > 0;
                        }
                    if (ok && std::find(corners.begin(), corners.end(), e) == corners.end()) corners.push_back(e);
                }
            auto pick = corners[g.uniform(0, static_cast<int>(corners.size()) - 1)];
            monos.push_back(pick);
            have.insert(pick);
        }
        std::map<std::vector<int>, int> pos;
        for (int i = 0; i < r; ++i) pos[monos[i]] = i;
        Table m(r, std::vector<std::vector<Rat>>(r, std::vector<Rat>(r, Rat(0))));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                std::vector<int> e(v);
                for (int t = 0; t < v; ++t) e[t] = monos[i][t] + monos[j][t];
                auto it = pos.find(e);
                if (it != pos.end()) m[i][j][it->second] = 1;
            }
        Mat P = g.invertible(r), Pi = inverse_or_throw(P);
        Table c(r, std::vector<std::vector<Rat>>(r, std::vector<Rat>(r, Rat(0))));
        AlgElt aug(r);
        for (int a = 0; a < r; ++a) {
            aug[a] = P(0, a);
            for (int b = 0; b < r; ++b) {
                AlgElt prod = basis_mul(m, r, from_col(P.col(a)), from_col(P.col(b)));
                AlgElt in_new = from_col(Pi * as_col(prod));
                c[a][b] = in_new;
            }
        }
        try {
            return make_augmented_ring(std::move(c), std::move(aug));
        } catch (const Error&) {
        }
    }
    fail(Errc::Internal, "could not sample an augmented ring");
}

AlgElt alg_mul(const AugmentedRing& A, const AlgElt& a, const AlgElt& b) {
    check_elt(A, a);
    check_elt(A, b);
    return basis_mul(A.c, A.r, a, b);
}

AlgElt alg_add(const AlgElt& a, const AlgElt& b) {
    if (a.size() != b.size()) fail(Errc::ShapeMismatch, "element ranks differ");
    AlgElt out = a;
    for (size_t i = 0; i < a.size(); ++i) out[i] += b[i];
    return out;
}

AlgElt alg_scale(const Rat& s, const AlgElt& a) {
    AlgElt out = a;
    for (auto& x : out) x *= s;
    return out;
}

AlgElt alg_one(const AugmentedRing& A) { return A.unit; }

AlgElt alg_pow(const AugmentedRing& A, const AlgElt& a, int k) {
    if (k < 0) return alg_pow(A, alg_inverse(A, a), -k);
    AlgElt out = alg_one(A), base = a;
    while (k) {
        if (k & 1) out = alg_mul(A, out, base);
        k >>= 1;
        if (k) base = alg_mul(A, base, base);
    }
    return out;
}

AlgElt alg_inverse(const AugmentedRing& A, const AlgElt& a) {
    check_elt(A, a);
    Mat L(A.r, A.r);
    for (int j = 0; j < A.r; ++j) L.set_block(0, j, as_col(alg_mul(A, a, unit_vec(A.r, j))));
    auto x = solve_linear(L, as_col(A.unit));
    if (!x) fail(Errc::Singular, "element is not a unit");
    return from_col(*x);
}

Rat augment(const AugmentedRing& A, const AlgElt& a) {
    check_elt(A, a);
    Rat s = 0;
    for (int i = 0; i < A.r; ++i) s += A.augmentation[i] * a[i];
    return s;
}

AlgElt random_element(const AugmentedRing& A, std::uint64_t seed, const Rat& aug) {
    Gen g(seed);
    AlgElt x(A.r);
    for (auto& v : x) v = g.small_rat(3);
    return alg_add(x, alg_scale(aug - augment(A, x), A.unit));
}

Series binomial_series(int p, int D) {
    if (p < 1 || D < 0) fail(Errc::RangeError, "need p >= 1 and D >= 0");
    Series f(D + 1, Rat(0));
    for (int i = 1; i <= std::min(p, D); ++i) f[i] = binom(p, i) / p;
    return f;
}

Series compose_series(const Series& f, const Series& g, int D) {
    if (!g.empty() && g[0] != 0) fail(Errc::InvalidArgument, "inner series must vanish at 0");
    Series out(D + 1, Rat(0)), pw(D + 1, Rat(0));
    pw[0] = 1;
    for (size_t i = 0; i < f.size() && static_cast<int>(i) <= D; ++i) {
        for (int k = 0; k <= D; ++k) out[k] += f[i] * pw[k];
        pw = series_mul(pw, g, D);
    }
    return out;
}

Series pth_root_series(int p, int D) {
    if (p < 1 || D < 1) fail(Errc::RangeError, "need p >= 1 and D >= 1");
    Series F = binomial_series(p, D);
    Series G(D + 1, Rat(0));
    G[1] = 1;
    // F = X + O(X^2), so [Z^d] F(G) = g_d + (terms in g_1..g_{d-1})
    for (int d = 2; d <= D; ++d) G[d] = -compose_series(F, G, d)[d];
    return G;
}

AlgElt nth_root_unit(const AugmentedRing& A, const AlgElt& a, int n) {
    if (n < 1) fail(Errc::RangeError, "need n >= 1");
    require_unipotent(A, a);
    int D = std::max(1, nilpotency_index(A));
    AlgElt b = a;
    for (int p : prime_factors(n)) {
        AlgElt z = alg_scale(Rat(1, p), alg_add(b, alg_scale(-1, A.unit)));
        b = alg_add(A.unit, eval_series(A, pth_root_series(p, D), z));
    }
    return b;
}

AlgElt newton_root(const AugmentedRing& A, const AlgElt& a, int n) {
    if (n < 1) fail(Errc::RangeError, "need n >= 1");
    require_unipotent(A, a);
    AlgElt x = alg_one(A);
    for (int it = 0; it < 64; ++it) {
        AlgElt err = alg_add(alg_pow(A, x, n), alg_scale(-1, a));
        if (std::all_of(err.begin(), err.end(), [](const Rat& v) { return v == 0; })) return x;
        AlgElt deriv = alg_scale(n, alg_pow(A, x, n - 1));
        x = alg_add(x, alg_scale(-1, alg_mul(A, err, alg_inverse(A, deriv))));
    }
    fail(Errc::Internal, "Newton iteration did not terminate");
}

bool unit_roots_trivial(int n, const AugmentedRing& A, std::uint64_t seed, int samples) {
    if (n < 1) fail(Errc::RangeError, "need n >= 1");
    AlgElt one = alg_one(A);
    for (int s = 0; s < samples; ++s) {
        AlgElt a = random_element(A, seed * 1000003u + 2 * s, 1);
        AlgElt b1 = nth_root_unit(A, a, n), b2 = newton_root(A, a, n);
        if (alg_pow(A, b1, n) != a || alg_pow(A, b2, n) != a) return false;
        if (alg_mul(A, b1, alg_inverse(A, b2)) != one) return false;
        // (1+y)^n - 1 = y w with w invertible, so a unipotent root of 1 is 1
        AlgElt y = random_element(A, seed * 1000003u + 2 * s + 1, 0);
        AlgElt w(A.r, Rat(0));
        for (int i = 1; i <= n; ++i) w = alg_add(w, alg_scale(binom(n, i), alg_pow(A, y, i - 1)));
        AlgElt lhs = alg_add(alg_pow(A, alg_add(one, y), n), alg_scale(-1, one));
        if (lhs != alg_mul(A, y, w)) return false;
        try {
            alg_inverse(A, w);
        } catch (const Error&) {
            return false;
        }
    }
    return true;
}

AlgElt untwisted_pushforward(const GerbeKModel& g) {
    if (g.n < 1) fail(Errc::RangeError, "gerbe order must be positive");
    if (static_cast<int>(g.classes.size()) != g.n) fail(Errc::InvalidArgument, "need one class per weight");
    for (auto& a : g.classes) check_elt(g.A, a);
    AlgElt root = nth_root_unit(g.A, g.c, g.n);
    AlgElt out(g.A.r, Rat(0)), pw = alg_one(g.A);
    for (int i = 0; i < g.n; ++i) {
        out = alg_add(out, alg_mul(g.A, pw, g.classes[i]));
        pw = alg_mul(g.A, pw, root);
    }
    return out;
}

GerbeKModel retwist(const GerbeKModel& g, const AlgElt& v) {
    require_unipotent(g.A, v);
    GerbeKModel out = g;
    out.c = alg_mul(g.A, alg_pow(g.A, v, g.n), g.c);
    AlgElt vinv = alg_inverse(g.A, v), pw = alg_one(g.A);
    for (int i = 0; i < g.n && i < static_cast<int>(g.classes.size()); ++i) {
        out.classes[i] = alg_mul(g.A, pw, g.classes[i]);
        pw = alg_mul(g.A, pw, vinv);
    }
    return out;
}

}  // namespace quadcx
