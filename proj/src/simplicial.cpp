#include "quadcx/simplicial.hpp"

#include <algorithm>

namespace quadcx {

namespace {

void check_face(int N, const Face& f) {
    if (f.empty()) fail(Errc::InvalidArgument, "empty face");
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i] < 0 || f[i] > N) fail(Errc::RangeError, "vertex index out of range");
        if (i && f[i] <= f[i - 1]) fail(Errc::InvalidArgument, "face must be strictly increasing");
    }
}

void add_closure(std::set<Face>& out, const Face& f) {
    if (out.count(f)) return;
    int k = static_cast<int>(f.size());
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        Face s;
        for (int i = 0; i < k; ++i)
            if (mask >> i & 1) s.push_back(f[i]);
        out.insert(s);
    }
}

std::vector<int> complement(int N, const Face& f) {
    std::vector<int> out;
    for (int j = 0; j <= N; ++j)
        if (!std::binary_search(f.begin(), f.end(), j)) out.push_back(j);
    return out;
}

Ideal ideal_of(const SimplicialSubset& K) {
    std::vector<Ideal> fam;
    for (auto& f : maximal_faces(K)) fam.push_back(coordinate_ideal(K.N, complement(K.N, f)));
    return intersect_all(K.N, fam);
}

long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

bool operator==(const SimplicialSubset& a, const SimplicialSubset& b) { return a.N == b.N && a.faces == b.faces; }

SimplicialSubset simplicial_from(int N, const std::vector<Face>& generators) {
    if (N < 0) fail(Errc::RangeError, "negative ambient dimension");
    SimplicialSubset K{N, {}};
    for (auto f : generators) {
        std::sort(f.begin(), f.end());
        check_face(N, f);
        add_closure(K.faces, f);
    }
    return K;
}

SimplicialSubset full_simplex(int N) {
    Face all(N + 1);
    for (int i = 0; i <= N; ++i) all[i] = i;
    return simplicial_from(N, {all});
}

SimplicialSubset boundary_simplex(int n, int N) {
    if (n < 0 || n > N) fail(Errc::RangeError, "need 0 <= n <= N");
    std::vector<Face> gens;
    for (int skip = 0; skip <= n; ++skip) {
        Face f;
        for (int i = 0; i <= n; ++i)
            if (i != skip) f.push_back(i);
        if (!f.empty()) gens.push_back(f);
    }
    return simplicial_from(N, gens);
}

bool is_simplicial_subset(const SimplicialSubset& K) {
    for (auto& f : K.faces) {
        try {
            check_face(K.N, f);
        } catch (const Error&) {
            return false;
        }
        for (size_t i = 0; f.size() > 1 && i < f.size(); ++i) {
            Face s = f;
            s.erase(s.begin() + static_cast<long>(i));
            if (!K.faces.count(s)) return false;
        }
    }
    return true;
}

std::vector<Face> maximal_faces(const SimplicialSubset& K) {
    std::vector<Face> out;
    for (auto& f : K.faces) {
        bool maximal = true;
        for (int v = 0; v <= K.N && maximal; ++v) {
            if (std::binary_search(f.begin(), f.end(), v)) continue;
            Face g = f;
            g.insert(std::upper_bound(g.begin(), g.end(), v), v);
            if (K.faces.count(g)) maximal = false;
        }
        if (maximal) out.push_back(f);
    }
    return out;
}

std::vector<int> face_counts(const SimplicialSubset& K) {
    std::vector<int> out;
    for (auto& f : K.faces) {
        size_t d = f.size() - 1;
        if (out.size() <= d) out.resize(d + 1, 0);
        ++out[d];
    }
    return out;
}

AffineMap cosimplicial_map(int n, const std::vector<int>& phi) {
    if (phi.empty()) fail(Errc::InvalidArgument, "phi needs at least one value");
    int m = static_cast<int>(phi.size()) - 1;
    for (size_t i = 0; i < phi.size(); ++i) {
        if (phi[i] < 0 || phi[i] > n) fail(Errc::RangeError, "phi value out of range");
        if (i && phi[i] < phi[i - 1]) fail(Errc::NotMonotone, "phi is not order-preserving");
    }
    Mat v0 = vertex_point(n, phi[0]);
    AffineMap f{Mat(n, m), v0};
    for (int i = 1; i <= m; ++i) f.A.set_block(0, i - 1, vertex_point(n, phi[i]) - v0);
    return f;
}

AffineMap compose(const AffineMap& g, const AffineMap& f) {
    if (g.A.cols() != f.A.rows()) fail(Errc::ShapeMismatch, "affine maps not composable");
    return {g.A * f.A, g.A * f.t + g.t};
}

Mat apply(const AffineMap& f, const Mat& x) { return f.A * x + f.t; }

Mat vertex_point(int M, int k) {
    if (k < 0 || k > M) fail(Errc::RangeError, "vertex index out of range");
    Mat v(M, 1);
    if (k > 0) v(k - 1, 0) = 1;
    return v;
}

GroebnerBasis realization_ideal(const SimplicialSubset& K) { return buchberger(ideal_of(K)); }

bool verify_pushout_ideal(const SimplicialSubset& K, const Face& x) {
    check_face(K.N, x);
    if (!K.faces.count(x)) fail(Errc::InvalidArgument, "face not in K");
    auto maxes = maximal_faces(K);
    if (std::find(maxes.begin(), maxes.end(), x) == maxes.end()) fail(Errc::InvalidArgument, "face not maximal");
    SimplicialSubset rest = K;
    rest.faces.erase(x);
    Ideal lhs = ideal_sum(ideal_of(rest), coordinate_ideal(K.N, complement(K.N, x)));
    SimplicialSubset bd{K.N, {}};
    for (auto& f : K.faces)
        if (f != x && std::includes(x.begin(), x.end(), f.begin(), f.end())) bd.faces.insert(f);
    return ideals_equal(lhs, ideal_of(bd));
}

int face_index(int N, const Face& f) {
    check_face(N, f);
    int k = static_cast<int>(f.size());
    long idx = 0;
    for (int c = 1; c < k; ++c) idx += binom(N + 1, c);
    // lex rank among k-subsets of [0, N]
    int prev = -1;
    for (int i = 0; i < k; ++i) {
        for (int v = prev + 1; v < f[i]; ++v) idx += binom(N - v, k - i - 1);
        prev = f[i];
    }
    return static_cast<int>(idx);
}

Face face_at(int N, int index) {
    if (index < 0 || index >= (1 << (N + 1)) - 1) fail(Errc::RangeError, "face index out of range");
    int k = 1;
    while (index >= binom(N + 1, k)) index -= static_cast<int>(binom(N + 1, k++));
    Face f;
    int v = 0;
    for (int i = 0; i < k; ++i) {
        while (index >= binom(N - v, k - i - 1)) index -= static_cast<int>(binom(N - v++, k - i - 1));
        f.push_back(v++);
    }
    return f;
}

SimplicialSubset subdivide(const SimplicialSubset& K) {
    if (K.N > 4) fail(Errc::CostGuard, "subdivision limited to N <= 4");
    int M = (1 << (K.N + 1)) - 2;
    SimplicialSubset out{M, {}};
    std::vector<Face> fs(K.faces.begin(), K.faces.end());
    // maximal chains suffice: the closure adds the rest
    std::vector<Face> chain;
    auto extend = [&](auto&& self) -> void {
        bool grown = false;
        for (auto& g : fs) {
            const Face& top = chain.back();
            if (g.size() <= top.size() || !std::includes(g.begin(), g.end(), top.begin(), top.end())) continue;
            grown = true;
            chain.push_back(g);
            self(self);
            chain.pop_back();
        }
        if (!grown) {
            Face simplex;
            for (auto& c : chain) simplex.push_back(face_index(K.N, c));
            std::sort(simplex.begin(), simplex.end());
            add_closure(out.faces, simplex);
        }
    };
    for (auto& f : fs) {
        if (f.size() != 1) continue;
        chain = {f};
        extend(extend);
    }
    return out;
}

int product_vertex(int N, int i, int j) {
    if (i < 0 || i > N || j < 0 || j > 1) fail(Errc::RangeError, "product vertex out of range");
    return i + (N + 1) * j;
}

ProductEmbedding product_embedding(int N) {
    if (N < 0) fail(Errc::RangeError, "negative dimension");
    ProductEmbedding p{N, {}, {Mat(N + 1, 2 * N + 1), Mat(N + 1, 1)}};
    for (int j = 0; j <= 1; ++j)
        for (int i = 0; i <= N; ++i) p.vertex.push_back(product_vertex(N, i, j));
    // v_{i+(N+1)j} -> (v_i, j); v_0 -> origin, so the translation vanishes
    for (int k = 1; k <= 2 * N + 1; ++k) {
        int i = k % (N + 1), j = k / (N + 1);
        p.gamma.A.set_block(0, k - 1, vstack(vertex_point(N, i), Mat{{j}}));
    }
    return p;
}

SimplicialSubset product_with_interval(const SimplicialSubset& K) {
    int N = K.N;
    SimplicialSubset out{2 * N + 1, {}};
    for (auto& f : maximal_faces(K))
        // prism over f: (f_0,0)..(f_t,0),(f_t,1)..(f_last,1)
        for (size_t t = 0; t < f.size(); ++t) {
            Face s;
            for (size_t a = 0; a <= t; ++a) s.push_back(product_vertex(N, f[a], 0));
            for (size_t a = t; a < f.size(); ++a) s.push_back(product_vertex(N, f[a], 1));
            add_closure(out.faces, s);
        }
    return out;
}

}  // namespace quadcx
