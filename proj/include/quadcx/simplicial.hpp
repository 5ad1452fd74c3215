#pragma once

#include <set>
#include <vector>

#include "quadcx/linalg.hpp"
#include "quadcx/polyring.hpp"

namespace quadcx {

using Face = std::vector<int>;  // sorted, nonempty

// Downward-closed set of nonempty faces of Delta^N.
struct SimplicialSubset {
    int N = 0;
    std::set<Face> faces;
};

bool operator==(const SimplicialSubset& a, const SimplicialSubset& b);

// Downward closure of the given faces; indices must lie in [0, N].
SimplicialSubset simplicial_from(int N, const std::vector<Face>& generators);
SimplicialSubset full_simplex(int N);
// boundary of Delta^n sitting on vertices 0..n of Delta^N
SimplicialSubset boundary_simplex(int n, int N);
bool is_simplicial_subset(const SimplicialSubset& K);
std::vector<Face> maximal_faces(const SimplicialSubset& K);
// number of faces of each dimension 0..
std::vector<int> face_counts(const SimplicialSubset& K);

// Affine map A^m -> A^n induced by phi: [m] -> [n]; image of x is A x + t.
struct AffineMap {
    Mat A;
    Mat t;  // n x 1
};

AffineMap cosimplicial_map(int n, const std::vector<int>& phi);
AffineMap compose(const AffineMap& g, const AffineMap& f);  // g after f
Mat apply(const AffineMap& f, const Mat& x);

// Intersection over maximal faces I of (X_j)_{j not in I}, as a reduced Groebner basis.
GroebnerBasis realization_ideal(const SimplicialSubset& K);
// I(K minus x) + a_x equals the ideal of the boundary of x.
bool verify_pushout_ideal(const SimplicialSubset& K, const Face& x);

// Position of a nonempty subset of [0, N] in (cardinality, lex) order.
int face_index(int N, const Face& f);
Face face_at(int N, int index);
// Barycentric subdivision inside Delta^{2^{N+1}-2}.
SimplicialSubset subdivide(const SimplicialSubset& K);

struct ProductEmbedding {
    int N = 0;
    std::vector<int> vertex;  // vertex[i + (N+1) j] = i + (N+1) j
    AffineMap gamma;          // A^{2N+1} -> A^N x A^1
};

ProductEmbedding product_embedding(int N);
int product_vertex(int N, int i, int j);
// K x Delta^1 as a subset of Delta^{2N+1} (prism triangulation).
SimplicialSubset product_with_interval(const SimplicialSubset& K);
// vertex coordinates of v_k in A^M (v_0 = 0)
Mat vertex_point(int M, int k);

}  // namespace quadcx
