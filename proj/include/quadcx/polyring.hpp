#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "quadcx/linalg.hpp"

namespace quadcx {

using Exps = std::vector<int>;

enum class MonoOrder { Grevlex, Lex };

// true iff a > b in the given order
bool mono_greater(const Exps& a, const Exps& b, MonoOrder o);

class MPoly {
public:
    MPoly() = default;
    explicit MPoly(int nvars) : n_(nvars) {}
    static MPoly constant(int nvars, const Rat& c);
    static MPoly var(int nvars, int i);
    static MPoly monomial(const Exps& e, const Rat& c);

    int nvars() const { return n_; }
    const std::map<Exps, Rat>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    int total_degree() const;
    bool is_homogeneous() const;
    void add_term(const Exps& e, const Rat& c);
    Rat coeff(const Exps& e) const;

    Exps lead_exps(MonoOrder o) const;
    Rat lead_coeff(MonoOrder o) const;

    // Insert `count` fresh variables at position `at`.
    MPoly insert_vars(int at, int count) const;
    // Substitute polynomial values for every variable.
    MPoly substitute(const std::vector<MPoly>& values) const;
    Rat eval(const std::vector<Rat>& point) const;

    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    MPoly& operator*=(const Rat& s);
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    friend MPoly operator*(const Rat& s, MPoly a) { return a *= s; }
    friend MPoly operator-(MPoly a) { return a *= Rat(-1); }
    friend bool operator==(const MPoly& a, const MPoly& b) { return a.n_ == b.n_ && a.t_ == b.t_; }

    std::string str() const;

private:
    int n_ = 0;
    std::map<Exps, Rat> t_;
};

MPoly pow(const MPoly& p, int k);

struct Ideal {
    int nvars = 0;
    std::vector<MPoly> gens;
};

struct GroebnerBasis {
    MonoOrder order = MonoOrder::Grevlex;
    int nvars = 0;
    std::vector<MPoly> basis;  // reduced, monic, sorted by increasing leading monomial
};

MPoly normal_form(const MPoly& f, const std::vector<MPoly>& g, MonoOrder o);
GroebnerBasis buchberger(const Ideal& i, MonoOrder o = MonoOrder::Grevlex);
bool ideal_member(const MPoly& f, const GroebnerBasis& g);
Ideal ideal_intersect(const Ideal& i, const Ideal& j);
Ideal ideal_sum(const Ideal& i, const Ideal& j);
bool ideals_equal(const Ideal& i, const Ideal& j);
bool gb_equal(const GroebnerBasis& a, const GroebnerBasis& b);
Ideal unit_ideal(int nvars);

// X_k as a polynomial in Q[X_1..X_N], with X_0 := 1 - X_1 - ... - X_N.
MPoly simplex_coord(int N, int k);
// (X_j)_{j in idx} with the X_0 convention.
Ideal coordinate_ideal(int N, const std::vector<int>& idx);
// Intersection over the family; the empty family gives the unit ideal.
Ideal intersect_all(int nvars, const std::vector<Ideal>& family);

// Both sides of the ideal-intersection identity computed independently.
bool verify_ideal_lemma(int N, int n, const std::vector<std::vector<int>>& J);

}  // namespace quadcx
