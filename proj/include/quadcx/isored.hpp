#pragma once

#include "quadcx/selfdual.hpp"

namespace quadcx {

bool sd_equal(const SelfDualComplex& a, const SelfDualComplex& b);

// Roof F <- A -> E; source is F, target is E.
struct IsotropicReduction {
    Representative source;
    Representative target;
    FreeComplex mid;
    ChainMap f;  // mid -> source.sd.assembled()
    ChainMap e;  // mid -> target.sd.assembled()
    bool generalized = false;
};

struct ReductionReport {
    bool f_chain = false, e_chain = false;
    bool f_qis = false, e_qis = false;
    bool f_iso_positive = false;  // (i)
    bool e_iso_negative = false;  // (i)
    bool rank_condition = false;  // (ii), true when skipped
    bool square = false;          // (iii)
    bool ok() const {
        return f_chain && e_chain && f_qis && e_qis && f_iso_positive && e_iso_negative && rank_condition && square;
    }
};

IsotropicReduction identity_reduction(const Representative& E);
IsotropicReduction make_reduction(const Representative& E, const ChainMap& e_plus, bool generalized = false);
ReductionReport validate_reduction(const IsotropicReduction& r);
// (e_1, d): A^1 -> E^1 + A^2 injective
bool rank_condition(const IsotropicReduction& r);

// xi: G ~> F, zeta: F ~> E
IsotropicReduction compose_reductions(const IsotropicReduction& xi, const IsotropicReduction& zeta);

// Same endpoints and an isomorphism of middles compatible with both legs; returns it.
std::optional<ChainMap> reductions_equivalent(const IsotropicReduction& a, const IsotropicReduction& b);

// Isotropic K in (E^0, Q) with the canonical complement of K inside K^perp.
struct IsotropicData {
    Mat Q;
    Mat K;            // canonical basis
    Mat perp;         // canonical basis of K^perp
    Mat K_in_perp;    // K in perp coordinates
    Mat complement;   // columns of E^0 spanning a complement of K in K^perp
    Mat form;         // complement^T Q complement
};

IsotropicData isotropic_data(const Mat& Q, const Mat& K);
// Complement coordinates of vectors of K^perp modulo K.
Mat quotient_coords(const IsotropicData& d, const Mat& v);

struct PairMorphism {
    Mat K;
    Mat complement;
    Mat qIso;  // F^0 -> K^perp/K in complement coordinates
    Rat phi;
    Mat form;
};

bool pair_equal(const PairMorphism& a, const PairMorphism& b);
PairMorphism extract_pair_morphism(const IsotropicReduction& r);
// xi: (F) -> (E) over Q_E, zeta: (G) -> (F)
PairMorphism pair_compose(const Mat& QE, const PairMorphism& xi, const PairMorphism& zeta);

// Torsion of a complex with standard bases and the given cocycle bases of its cohomology.
Rat torsion(const FreeComplex& c, const std::map<int, Mat>& cohomology_basis);

IsotropicReduction pad_with_acyclic(const Representative& E, const FreeComplex& k);
// Padding by the cone of the identity of the positive part.
IsotropicReduction cone_identity_padding(const Representative& E);
IsotropicReduction genuine_from_generalized(const IsotropicReduction& z);

// b_plus - a_plus = dh + hd; iso F_a -> F_b of self-dual complexes.
ChainMap homotopy_reduction_iso(const Representative& E, const ChainMap& a_plus, const ChainMap& b_plus,
                                const Homotopy& h);

struct Refinement {
    Representative G;
    IsotropicReduction to_E;
    IsotropicReduction to_F;
};

// Uses the chain-level identifications of both representatives.
Refinement common_refinement(const Representative& E, const Representative& F);
// e: A -> E and f: A -> F quasi-isomorphisms with e^v e and f^v f homotopic.
Refinement common_refinement(const Representative& E, const Representative& F, const ChainMap& e,
                             const ChainMap& f);

struct ReductionFamily {
    Representative source;
    Representative target;
    PolyComplex mid;
    PolyChainMap f, e;
    bool generalized = true;
};

IsotropicReduction specialize(const ReductionFamily& fam, const Rat& t);

struct Connection {
    IsotropicReduction upsilon;  // G ~> F
    ReductionFamily family;      // G ~> E over Q[t]
    IsotropicReduction at0, at1; // xi0 . upsilon, xi1 . upsilon
    // per sample t: psi_t invertible, specialization validates
    std::vector<std::pair<Rat, bool>> psi_invertible;
    std::vector<std::pair<Rat, bool>> valid_at;
};

Connection connect_reductions(const IsotropicReduction& xi0, const IsotropicReduction& xi1);

// det(q) on (det M)^2 in the standard basis: det(Q) (-1)^{n(n-1)/2}
Rat det_q(const Mat& Q);
bool is_orientation(const Mat& Q, const Rat& o);
// Orientation of K^perp/K in complement coordinates.
Rat reduce_orientation(const IsotropicData& d, const Rat& o);
// Orientation on the source middle of r induced by o on the target middle.
Rat orientation_transfer(const IsotropicReduction& r, const Rat& o);

}  // namespace quadcx
