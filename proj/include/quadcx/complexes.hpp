#pragma once

#include <map>
#include <optional>
#include <vector>

#include "quadcx/linalg.hpp"

namespace quadcx {

// Bounded cochain complex of finite free Q-modules; d(i): C^i -> C^{i+1}.
class FreeComplex {
public:
    FreeComplex() = default;
    // ranks[k] is the rank in degree lo+k; diffs[k] maps degree lo+k to lo+k+1.
    FreeComplex(int lo, std::vector<int> ranks, std::vector<Mat> diffs);
    static FreeComplex single(int deg, int rank);

    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(ranks_.size()) - 1; }
    bool empty_range() const { return ranks_.empty(); }
    int rank(int i) const;
    Mat d(int i) const;
    int total_rank() const;

    friend bool operator==(const FreeComplex& a, const FreeComplex& b);

private:
    int lo_ = 0;
    std::vector<int> ranks_;
    std::vector<Mat> diffs_;
};

// Smallest degree range covering the nonzero parts of both complexes.
std::pair<int, int> span_of(const FreeComplex& a, const FreeComplex& b);

struct ChainMap {
    FreeComplex src, tgt;
    std::map<int, Mat> comps;
    Mat at(int i) const;
    void set(int i, Mat m);
};

// h_i : src^i -> tgt^{i-1}
struct Homotopy {
    FreeComplex src, tgt;
    std::map<int, Mat> comps;
    Mat at(int i) const;
    void set(int i, Mat m);
};

bool is_complex(const FreeComplex& c);
FreeComplex make_complex(int lo, const std::vector<int>& ranks, const std::vector<Mat>& diffs);
bool is_chain_map(const ChainMap& f);
bool maps_equal(const ChainMap& f, const ChainMap& g);

FreeComplex dual(const FreeComplex& c);
ChainMap dual(const ChainMap& f);
Homotopy dual(const Homotopy& h);

FreeComplex cone(const ChainMap& f);
std::map<int, int> cohomology(const FreeComplex& c);
// Deterministic cocycle representatives of a cohomology basis in degree i.
Mat cohomology_reps(const FreeComplex& c, int i);
// Coordinates of cocycles (columns) in the basis given by cohomology_reps.
Mat cohomology_coords(const FreeComplex& c, int i, const Mat& cocycles);
Mat induced_on_cohomology(const ChainMap& f, int i);
bool is_acyclic(const FreeComplex& c);
bool is_qis(const ChainMap& f);

ChainMap identity_map(const FreeComplex& c);
ChainMap zero_map(const FreeComplex& src, const FreeComplex& tgt);
ChainMap compose(const ChainMap& g, const ChainMap& f);
ChainMap add(const ChainMap& f, const ChainMap& g);
ChainMap scale(const Rat& s, const ChainMap& f);
FreeComplex direct_sum(const FreeComplex& a, const FreeComplex& b);
ChainMap direct_sum(const ChainMap& f, const ChainMap& g);
// C[k]^i = C^{i+k}, differential (-1)^k d.
FreeComplex shift(const FreeComplex& c, int k);

// d h + h d as a chain-map-shaped object
ChainMap homotopy_boundary(const Homotopy& h);
bool check_homotopy(const ChainMap& f, const ChainMap& g, const Homotopy& h);
// h with f - g = d h + h d, solved as one linear system.
std::optional<Homotopy> homotopy_between(const ChainMap& f, const ChainMap& g);
Homotopy zero_homotopy(const FreeComplex& src, const FreeComplex& tgt);
Homotopy compose(const ChainMap& g, const Homotopy& h);
Homotopy compose(const Homotopy& h, const ChainMap& f);
// A chain map that is an isomorphism in every degree; returns its inverse.
ChainMap inverse_iso(const ChainMap& f);
bool is_degreewise_iso(const ChainMap& f);

// Matrices over Q[t], stored by coefficient of t^k.
class TMat {
public:
    TMat() = default;
    TMat(int rows, int cols) : rows_(rows), cols_(cols) {}
    explicit TMat(const Mat& m);
    static TMat t_times(const Mat& m);
    // sum of t^k coeffs[k]
    static TMat from_coeffs(int rows, int cols, std::vector<Mat> coeffs);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const std::vector<Mat>& coeffs() const { return c_; }
    Mat coeff(size_t k) const;
    Mat at(const Rat& t) const;
    int degree() const;
    bool is_zero() const;

    friend TMat operator+(const TMat& a, const TMat& b);
    friend TMat operator-(const TMat& a, const TMat& b);
    friend TMat operator*(const TMat& a, const TMat& b);
    friend TMat operator*(const Rat& s, const TMat& a);
    friend bool operator==(const TMat& a, const TMat& b);
    TMat transpose() const;

private:
    void trim();
    int rows_ = 0, cols_ = 0;
    std::vector<Mat> c_;
};

struct PolyComplex {
    int lo = 0;
    std::vector<int> ranks;
    std::vector<TMat> diffs;
    int rank(int i) const;
    TMat d(int i) const;
    int hi() const { return lo + static_cast<int>(ranks.size()) - 1; }
};

struct PolyChainMap {
    PolyComplex src, tgt;
    std::map<int, TMat> comps;
    TMat at(int i) const;
};

PolyComplex tensor_with_ring(const FreeComplex& c);
FreeComplex specialize(const PolyComplex& c, const Rat& t);
PolyChainMap tensor_with_ring(const ChainMap& f);
ChainMap specialize(const PolyChainMap& f, const Rat& t);
bool is_complex(const PolyComplex& c);
bool is_chain_map(const PolyChainMap& f);

}  // namespace quadcx
