#pragma once

#include <string>
#include <vector>

#include "quadcx/cliffspin.hpp"
#include "quadcx/polyring.hpp"

namespace quadcx {

// Dense matrix over Q[x_1..x_r].
struct PolyMat {
    int rows = 0, cols = 0, nvars = 0;
    std::vector<MPoly> e;

    PolyMat() = default;
    PolyMat(int r, int c, int nv);
    static PolyMat from(const Mat& m, int nv);
    MPoly& operator()(int i, int j) { return e[static_cast<size_t>(i) * cols + j]; }
    const MPoly& operator()(int i, int j) const { return e[static_cast<size_t>(i) * cols + j]; }
    bool is_zero() const;
    Mat eval(const std::vector<Rat>& point) const;
};

bool operator==(const PolyMat& a, const PolyMat& b);
PolyMat operator*(const PolyMat& a, const PolyMat& b);
PolyMat operator+(const PolyMat& a, const PolyMat& b);
PolyMat poly_scale(const MPoly& p, const PolyMat& m);

// Graded quotient Q[x_1..x_r]/I with a homogeneous ideal.
struct QuotientRing {
    int nvars = 0;
    std::vector<MPoly> gens;
    GroebnerBasis gb;
};

QuotientRing make_quotient(int nvars, const std::vector<MPoly>& gens);
// Standard monomials of degree d.
std::vector<Exps> standard_monomials(const QuotientRing& R, int d);

struct ConeSpec {
    QuadSpace ambient;
    int vars = 0;
    Mat embedding;  // n x vars: s = embedding * x
    std::vector<MPoly> ideal;
};

ConeSpec linear_cone(int n, int k);  // span(e_1..e_k), no equations

struct TwoPeriodicComplex {
    QuotientRing ring;
    int splus = 0, sminus = 0;
    PolyMat dplus;   // S+ -> S-
    PolyMat dminus;  // S- -> S+
    MPoly potential;
    Mat plus_basis, minus_basis;  // omega eigenspaces inside S
};

// Tautological section as linear forms, one per coordinate of E.
std::vector<MPoly> tautological_section(const ConeSpec& c);
TwoPeriodicComplex build_matfac(const ConeSpec& cone, const SpinDatum& sigma);

struct GradedCohomology {
    std::vector<int> h0, h1;  // internal degrees 0..D
    bool stabilized = true;   // both vanish at D
    std::string warning;
};

GradedCohomology graded_cohomology(const TwoPeriodicComplex& c, int cutoff = 6);

struct KoszulDecomposition {
    TwoPeriodicComplex full;     // C(E, s, S)
    TwoPeriodicComplex reduced;  // C(F, s_bar, S_tau), over the reduced cone ring
    PolyMat koszul;              // s_K on Lambda <f_1..f_k>, over the K coordinates
    Mat change;                  // S_tau (x) S_K -> S
    PolyMat tensor;              // d_F (x) 1 + eps (x) d_K in the product basis
    PolyMat conjugated;          // change^-1 d_E change
    bool matches = false;
};

// Cone variables 0..k-1 are the K coordinates mapped to e_1..e_k; the others map into F.
KoszulDecomposition koszul_decompose(const ConeSpec& cone, const SpinDatum& sigma, int k);

// The reduced cone inside F = span(b_{k+1}..b_{n-k}).
ConeSpec reduce_cone(const ConeSpec& cone, int k);

struct QisReport {
    std::vector<bool> degree_iso;  // per internal degree, h0 and h1 together
    GradedCohomology reduced, full;
    bool chain_map = false;
    bool ok() const;
};

QisReport reduction_qis_report(const ConeSpec& cone, const SpinDatum& sigma, int k, int cutoff = 6);
bool verify_reduction_qis(const ConeSpec& cone, const SpinDatum& sigma, int k, int cutoff = 6);

struct Dt4Report {
    int n = 0, k = 0, cutoff = 0;
    GradedCohomology coh;
    int total = 0;
    int expected_even = 0, expected_odd = 0;
    bool concentrated = false;  // everything in internal degree 0
    bool matches = false;
};

Dt4Report dt4_local_demo(int n, int k, int cutoff = 6);

}  // namespace quadcx
