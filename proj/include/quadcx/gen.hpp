#pragma once

#include <cstdint>
#include <random>

#include "quadcx/selfdual.hpp"

namespace quadcx {

// Seeded generators for test instances; every draw is reproducible from the seed.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    int uniform(int lo, int hi);
    Rat small_rat(int range = 3);
    Rat nonzero_rat(int range = 3);
    Mat mat(int rows, int cols, int range = 3);
    Mat invertible(int n);
    Mat symmetric(int n);

    // Split complex with random ranks in [lo, hi], conjugated by random bases.
    FreeComplex complex(int lo, int hi, int max_piece = 2);
    FreeComplex acyclic(int lo, int hi, int max_piece = 2);
    // Random invertible change of basis in every degree, as a chain iso c -> result.
    ChainMap conjugation(const FreeComplex& c);
    // A quasi-isomorphism out of `src` into a padded, conjugated copy.
    ChainMap qis_from(const FreeComplex& src, int pad_lo, int pad_hi);
    Homotopy homotopy(const FreeComplex& src, const FreeComplex& tgt);

    // (Q, pos, a) with Q congruent to the standard split form.
    SelfDualComplex self_dual(int max_middle = 4, int max_top = 2);
    // A quadratic complex with non-symmetric theta quasi-isomorphic to `s`.
    QuadComplex quad_around(const SelfDualComplex& s, int pad = 1);

    // Random e+: A+ -> assembled(s) with A+ in degrees >= 1, admissible for the truncated splice
    // and satisfying the rank condition. `pad` adds an acyclic summand mapped by zero.
    ChainMap positive_lift(const SelfDualComplex& s, bool pad = true);

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

// Standard split form: ones on the anti-diagonal.
Mat antidiagonal(int n);

}  // namespace quadcx
