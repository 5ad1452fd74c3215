#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "quadcx/linalg.hpp"
#include "quadcx/polyring.hpp"

namespace quadcx {

struct QuadSpace {
    int n = 0;
    Mat Q;
};

QuadSpace make_quadspace(const Mat& Q);
// B_n: ones on the anti-diagonal. Basis b_1..b_n with e_i = b_i, f_i = b_{n+1-i}, u = b_{m+1}.
QuadSpace standard_quadspace(int n);

// Coefficient of b_1 ^ ... ^ b_n.
struct Orientation {
    Rat o;
};

bool is_orientation(const QuadSpace& s, const Orientation& o);
// (e_1 ^ f_1) ^ ... ^ (e_m ^ f_m) [^ u]
Orientation standard_orientation(int n);

using Word = std::uint32_t;  // bit i-1 <-> b_i (Clifford) or f_i (spinors)

inline bool coef_is_zero(const Rat& r) { return sgn(r) == 0; }
inline bool coef_is_zero(const MPoly& p) { return p.is_zero(); }

template <class T>
struct CliffEltT {
    QuadSpace space;
    std::map<Word, T> coeffs;  // nonzero only; words in increasing index order

    void add(Word w, const T& c);
    bool is_zero() const { return coeffs.empty(); }
    T coeff(Word w, const T& zero) const;
    bool is_even() const;
};

using CliffElt = CliffEltT<Rat>;
using PolyCliffElt = CliffEltT<MPoly>;

template <class T>
bool operator==(const CliffEltT<T>& a, const CliffEltT<T>& b) {
    return a.space.Q == b.space.Q && a.coeffs == b.coeffs;
}

CliffElt cl_scalar(const QuadSpace& s, const Rat& c);
// b_i, 1-based
CliffElt cl_gen(const QuadSpace& s, int i);
CliffElt cl_vector(const QuadSpace& s, const Mat& v);
CliffElt cl_word(const QuadSpace& s, Word w, const Rat& c = 1);
// Vector part as a column if x lies in F^1 with zero scalar part.
std::optional<Mat> cl_as_vector(const CliffElt& x);

template <class T>
CliffEltT<T> clifford_add(const CliffEltT<T>& x, const CliffEltT<T>& y);
template <class T>
CliffEltT<T> clifford_scale(const Rat& s, const CliffEltT<T>& x);
template <class T>
CliffEltT<T> clifford_mul(const CliffEltT<T>& x, const CliffEltT<T>& y);
template <class T>
CliffEltT<T> sigma(const CliffEltT<T>& x);

CliffElt operator+(const CliffElt& a, const CliffElt& b);
CliffElt operator-(const CliffElt& a, const CliffElt& b);
CliffElt operator*(const CliffElt& a, const CliffElt& b);
CliffElt operator*(const Rat& s, const CliffElt& a);

// Left inverse, which is two-sided; nullopt when x is not a unit.
std::optional<CliffElt> clifford_inverse(const CliffElt& x);

CliffElt volume_element(int n);
// Inverse of Gamma applied to o * b_1 ^ ... ^ b_n.
CliffElt volume_from_orientation(const QuadSpace& s, const Orientation& o);

// Columns w_i with W^T Q W diagonal.
Mat orthogonal_basis(const Mat& Q);
// Exterior algebra element in standard wedge words, computed through the orthogonal basis W.
std::map<Word, Rat> gamma(const CliffElt& x, const Mat& W);
CliffElt gamma_inverse(const QuadSpace& s, const std::map<Word, Rat>& wedge, const Mat& W);
int filtration_degree(const CliffElt& x);

struct SpinorElt {
    int m = 0;
    std::map<Word, Rat> coeffs;
};

bool operator==(const SpinorElt& a, const SpinorElt& b);

// Action of the standard Clifford algebra Cl(q_n) on Lambda <f_1..f_m>.
SpinorElt spinor_action(const CliffElt& c, const SpinorElt& s);
// Matrix in the basis of words 0..2^m-1.
Mat spinor_action_matrix(const CliffElt& c);
Mat spinor_gen_matrix(int n, int i);
bool action_is_iso(int n);

Rat spinor_pairing(const SpinorElt& x, const SpinorElt& y, int n);
Mat spinor_pairing_matrix(int n);

Mat lipschitz_so_part(const CliffElt& x);
Rat spinor_norm(const CliffElt& x);
Rat spinor_norm_via_pairing(const CliffElt& x);

// Wedge words in f_{k+1}..f_m.
std::vector<Word> ann_K(int k, int n);
// f_{k+j} -> f_j on a word of Ann(K).
Word ann_shift(Word w, int k);

struct SpinDatum {
    QuadSpace space;
    std::vector<Mat> action;  // b_1..b_n
    Mat eta;
};

SpinDatum standard_spin_datum(int n);

struct SpinDatumReport {
    bool relations = false;
    bool volume = false;    // odd: omega acts by 1; even: omega squares to 1
    bool balanced = false;
    bool nondegenerate = false;
    bool ok() const { return relations && volume && balanced && nondegenerate; }
};

SpinDatumReport validate_spin_datum(const SpinDatum& d);
Mat datum_action(const SpinDatum& d, const CliffElt& c);

struct ReducedDatum {
    SpinDatum datum;
    Mat inclusion;  // basis of Ann(K) in the coordinates of the input module
};

ReducedDatum reduce_spin_datum(const SpinDatum& d, int k);

struct PiTw {
    Mat B;
    Rat t;
};

PiTw pi_tw(const Mat& g, const Rat& t, int k);
bool check_pi_tw_square(const CliffElt& x, int k);

}  // namespace quadcx
