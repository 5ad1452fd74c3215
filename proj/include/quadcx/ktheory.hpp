#pragma once

#include <cstdint>
#include <vector>

#include "quadcx/linalg.hpp"

namespace quadcx {

using AlgElt = std::vector<Rat>;

// Commutative unital Q-algebra of finite rank with an augmentation; e_i e_j = sum_k c[i][j][k] e_k.
struct AugmentedRing {
    int r = 0;
    std::vector<std::vector<std::vector<Rat>>> c;
    AlgElt augmentation;  // values on the basis
    AlgElt unit;          // found on construction
};

// Validates commutativity, associativity, unit, augmentation and nilpotence of its kernel.
AugmentedRing make_augmented_ring(std::vector<std::vector<std::vector<Rat>>> c, AlgElt augmentation);
AugmentedRing random_augmented_ring(std::uint64_t seed, int r);
// Q[eps]/(eps^2)
AugmentedRing dual_numbers();
// Q[z_1..z_v]/(monomials of degree > d), monomial basis in graded lex order
AugmentedRing truncated_polynomials(int v, int d);

AlgElt alg_mul(const AugmentedRing& A, const AlgElt& a, const AlgElt& b);
AlgElt alg_add(const AlgElt& a, const AlgElt& b);
AlgElt alg_scale(const Rat& s, const AlgElt& a);
AlgElt alg_one(const AugmentedRing& A);
AlgElt alg_pow(const AugmentedRing& A, const AlgElt& a, int k);
AlgElt alg_inverse(const AugmentedRing& A, const AlgElt& a);  // Singular if not a unit
Rat augment(const AugmentedRing& A, const AlgElt& a);
// smallest k with I^k = 0
int nilpotency_index(const AugmentedRing& A);
// random element with augmentation `aug`
AlgElt random_element(const AugmentedRing& A, std::uint64_t seed, const Rat& aug);

// Truncated power series, coefficient i of Z^i.
using Series = std::vector<Rat>;
Series pth_root_series(int p, int D);
Series compose_series(const Series& f, const Series& g, int D);  // f(g(Z)), g(0) = 0
Series binomial_series(int p, int D);                           // ((1+X)^p - 1)/p

AlgElt nth_root_unit(const AugmentedRing& A, const AlgElt& a, int n);
// Newton iteration for b^n = a from b = 1; exact after finitely many steps.
AlgElt newton_root(const AugmentedRing& A, const AlgElt& a, int n);
bool unit_roots_trivial(int n, const AugmentedRing& A, std::uint64_t seed = 0, int samples = 8);

struct GerbeKModel {
    AugmentedRing A;
    int n = 1;
    AlgElt c;
    std::vector<AlgElt> classes;  // weight-i components a_0..a_{n-1}
};

AlgElt untwisted_pushforward(const GerbeKModel& g);
// (c, a_i) -> (v^n c, v^{-i} a_i)
GerbeKModel retwist(const GerbeKModel& g, const AlgElt& v);

}  // namespace quadcx
