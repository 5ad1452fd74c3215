#pragma once

#include "quadcx/complexes.hpp"

namespace quadcx {

// A complex with a map theta: carrier -> dual(carrier).
struct QuadComplex {
    FreeComplex carrier;
    ChainMap theta;
};

bool is_symmetric(const ChainMap& theta);

// [dual(pos) -> (E, Q) -> pos] with d(0) = a and d(-1) = Q^{-1} a^T.
struct SelfDualComplex {
    Mat Q;
    FreeComplex pos;  // degrees >= 1
    Mat a;            // E -> pos^1

    int middle_rank() const { return Q.rows(); }
    FreeComplex assembled() const;
    // theta_0 = Q, identity elsewhere
    ChainMap theta() const;
    QuadComplex quad() const { return {assembled(), theta()}; }
};

void validate_self_dual(const SelfDualComplex& s);

// alpha: ref.carrier -> sd.assembled() with dual(alpha) . theta' . alpha = ref.theta.
struct Representative {
    SelfDualComplex sd;
    QuadComplex ref;
    ChainMap alpha;
    bool has_alpha = false;
};

Representative trivial_representative(const SelfDualComplex& s);

// sigma_{>=k}: the stupid truncation in degrees >= k
FreeComplex truncate_below(const FreeComplex& c, int k);
ChainMap truncate_below(const ChainMap& f, int k);

QuadComplex symmetrize(const QuadComplex& q);

struct Splice {
    FreeComplex af;
    ChainMap eta_minus;  // A -> A_f
    ChainMap eta_plus;   // A_f -> B
    Mat kernel;          // basis of A_f^0 inside B^0 + A^1
};

// Splicing without precondition checks.
Splice splice_raw(const ChainMap& f);
Splice splice(const ChainMap& f);
// Source concentrated in degrees >= 1; checks the cohomological preconditions.
Splice splice_truncated(const ChainMap& a_plus);
// Degree in which the truncated-splice precondition fails, or nothing.
std::optional<int> truncated_splice_defect(const ChainMap& a_plus);

// Coordinates of vectors of B^0 + A^1 lying in A_f^0.
Mat splice_coords(const Splice& s, const Mat& v);

// Isomorphism A_{f^dual} -> dual(A_f).
ChainMap duality_identification(const ChainMap& f);

struct SelfDualRep {
    Representative rep;
    Splice spl;
    ChainMap theta_prime;  // A_theta -> dual(A_theta)
};

SelfDualRep self_dual_rep(const QuadComplex& q);

struct HomotopyIso {
    ChainMap alpha;     // A_f -> A_g
    Homotopy left;      // alpha . eta-(f) - eta-(g) = dH + Hd
    Homotopy right;     // eta+(f) - eta+(g) . alpha = dH + Hd
};

// f - g = dh + hd; degree 0 restricts [[id, -h_1], [0, id]] on B^0 + A^1.
HomotopyIso homotopy_iso(const ChainMap& f, const ChainMap& g, const Homotopy& h);
HomotopyIso homotopy_iso(const Splice& sf, const Splice& sg, const ChainMap& f, const ChainMap& g, const Homotopy& h);

}  // namespace quadcx
