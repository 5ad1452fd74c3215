#include "quadcx/polyring.hpp"

#include <algorithm>
#include <sstream>

namespace quadcx {

bool mono_greater(const Exps& a, const Exps& b, MonoOrder o) {
    if (o == MonoOrder::Lex) {
        for (size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] > b[i];
        return false;
    }
    int da = 0, db = 0;
    for (size_t i = 0; i < a.size(); ++i) da += a[i], db += b[i];
    if (da != db) return da > db;
    for (size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

MPoly MPoly::constant(int nvars, const Rat& c) {
    MPoly p(nvars);
    p.add_term(Exps(nvars, 0), c);
    return p;
}

MPoly MPoly::var(int nvars, int i) {
    Exps e(nvars, 0);
    e[i] = 1;
    return monomial(e, 1);
}

MPoly MPoly::monomial(const Exps& e, const Rat& c) {
    MPoly p(static_cast<int>(e.size()));
    p.add_term(e, c);
    return p;
}

int MPoly::total_degree() const {
    int d = -1;
    for (auto& [e, c] : t_) {
        int s = 0;
        for (int x : e) s += x;
        d = std::max(d, s);
    }
    return d;
}

bool MPoly::is_homogeneous() const {
    int d = -1;
    for (auto& [e, c] : t_) {
        int s = 0;
        for (int x : e) s += x;
        if (d >= 0 && s != d) return false;
        d = s;
    }
    return true;
}

void MPoly::add_term(const Exps& e, const Rat& c) {
    if (static_cast<int>(e.size()) != n_) fail(Errc::ShapeMismatch, "exponent length mismatch");
    if (sgn(c) == 0) return;
    auto it = t_.find(e);
    if (it == t_.end()) {
        t_.emplace(e, c);
    } else {
        it->second += c;
        if (sgn(it->second) == 0) t_.erase(it);
    }
}

Rat MPoly::coeff(const Exps& e) const {
    auto it = t_.find(e);
    return it == t_.end() ? Rat(0) : it->second;
}

Exps MPoly::lead_exps(MonoOrder o) const {
    if (t_.empty()) fail(Errc::InvalidArgument, "leading term of zero polynomial");
    if (o == MonoOrder::Lex) return t_.rbegin()->first;
    const Exps* best = nullptr;
    for (auto& [e, c] : t_)
        if (!best || mono_greater(e, *best, o)) best = &e;
    return *best;
}

Rat MPoly::lead_coeff(MonoOrder o) const { return t_.at(lead_exps(o)); }

MPoly MPoly::insert_vars(int at, int count) const {
    MPoly p(n_ + count);
    for (auto& [e, c] : t_) {
        Exps f(e);
        f.insert(f.begin() + at, count, 0);
        p.t_.emplace(std::move(f), c);
    }
    return p;
}

MPoly MPoly::substitute(const std::vector<MPoly>& values) const {
    if (static_cast<int>(values.size()) != n_) fail(Errc::ShapeMismatch, "substitution arity");
    int m = values.empty() ? 0 : values[0].nvars();
    MPoly out(m);
    for (auto& [e, c] : t_) {
        MPoly term = MPoly::constant(m, c);
        for (int i = 0; i < n_; ++i)
            if (e[i]) term = term * pow(values[i], e[i]);
        out += term;
    }
    return out;
}

Rat MPoly::eval(const std::vector<Rat>& point) const {
    Rat s = 0;
    for (auto& [e, c] : t_) {
        Rat term = c;
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < e[i]; ++k) term *= point[i];
        s += term;
    }
    return s;
}

MPoly& MPoly::operator+=(const MPoly& o) {
    if (o.n_ != n_) fail(Errc::ShapeMismatch, "polynomial arity mismatch");
    for (auto& [e, c] : o.t_) add_term(e, c);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    if (o.n_ != n_) fail(Errc::ShapeMismatch, "polynomial arity mismatch");
    for (auto& [e, c] : o.t_) add_term(e, -c);
    return *this;
}

MPoly& MPoly::operator*=(const Rat& s) {
    if (sgn(s) == 0) {
        t_.clear();
        return *this;
    }
    for (auto& [e, c] : t_) c *= s;
    return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
    if (a.n_ != b.n_) fail(Errc::ShapeMismatch, "polynomial arity mismatch");
    MPoly p(a.n_);
    Exps e(a.n_);
    for (auto& [ea, ca] : a.t_)
        for (auto& [eb, cb] : b.t_) {
            for (int i = 0; i < a.n_; ++i) e[i] = ea[i] + eb[i];
            p.add_term(e, ca * cb);
        }
    return p;
}

MPoly pow(const MPoly& p, int k) {
    MPoly r = MPoly::constant(p.nvars(), 1);
    for (int i = 0; i < k; ++i) r = r * p;
    return r;
}

std::string MPoly::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const Rat& c = it->second;
        bool unit = true;
        for (int x : it->first) unit = unit && x == 0;
        if (!first) os << (sgn(c) < 0 ? " - " : " + ");
        else if (sgn(c) < 0) os << "-";
        Rat a = abs(c);
        bool show = unit || a != 1;
        if (show) os << rat_str(a);
        bool star = show;
        for (int i = 0; i < n_; ++i) {
            if (!it->first[i]) continue;
            if (star) os << "*";
            os << "X" << (i + 1);
            if (it->first[i] > 1) os << "^" << it->first[i];
            star = true;
        }
        first = false;
    }
    return os.str();
}

namespace {

bool divides(const Exps& a, const Exps& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Exps lcm(const Exps& a, const Exps& b) {
    Exps l(a.size());
    for (size_t i = 0; i < a.size(); ++i) l[i] = std::max(a[i], b[i]);
    return l;
}

Exps sub(const Exps& a, const Exps& b) {
    Exps d(a.size());
    for (size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return d;
}

bool coprime(const Exps& a, const Exps& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] && b[i]) return false;
    return true;
}

MPoly make_monic(MPoly p, MonoOrder o) {
    if (p.is_zero()) return p;
    Rat lc = p.lead_coeff(o);
    p *= Rat(1) / lc;
    return p;
}

struct Lead {
    Exps e;
    Rat c;
};

}  // namespace

MPoly normal_form(const MPoly& f, const std::vector<MPoly>& g, MonoOrder o) {
    std::vector<Lead> leads;
    for (auto& p : g) leads.push_back({p.lead_exps(o), p.lead_coeff(o)});
    MPoly p = f, r(f.nvars());
    while (!p.is_zero()) {
        Exps le = p.lead_exps(o);
        Rat lc = p.coeff(le);
        bool reduced = false;
        for (size_t i = 0; i < g.size(); ++i) {
            if (!divides(leads[i].e, le)) continue;
            MPoly m = MPoly::monomial(sub(le, leads[i].e), lc / leads[i].c);
            p -= m * g[i];
            reduced = true;
            break;
        }
        if (!reduced) {
            r.add_term(le, lc);
            p.add_term(le, -lc);
        }
    }
    return r;
}

GroebnerBasis buchberger(const Ideal& ideal, MonoOrder o) {
    std::vector<MPoly> g;
    for (auto& p : ideal.gens) {
        if (p.nvars() != ideal.nvars) fail(Errc::ShapeMismatch, "generator arity mismatch");
        if (!p.is_zero()) g.push_back(make_monic(p, o));
    }
    std::vector<Exps> le;
    for (auto& p : g) le.push_back(p.lead_exps(o));
    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t j = 0; j < g.size(); ++j)
        for (size_t i = 0; i < j; ++i) pairs.push_back({i, j});

    while (!pairs.empty()) {
        // normal selection strategy: smallest lcm first
        size_t best = 0;
        for (size_t k = 1; k < pairs.size(); ++k) {
            Exps a = lcm(le[pairs[k].first], le[pairs[k].second]);
            Exps b = lcm(le[pairs[best].first], le[pairs[best].second]);
            if (mono_greater(b, a, o)) best = k;
        }
        auto [i, j] = pairs[best];
        pairs.erase(pairs.begin() + static_cast<long>(best));
        if (coprime(le[i], le[j])) continue;
        Exps l = lcm(le[i], le[j]);
        // chain criterion
        bool skip = false;
        for (size_t k = 0; k < g.size() && !skip; ++k) {
            if (k == i || k == j || !divides(le[k], l)) continue;
            auto pending = [&](size_t a, size_t b) {
                auto key = std::make_pair(std::min(a, b), std::max(a, b));
                return std::find(pairs.begin(), pairs.end(), key) != pairs.end();
            };
            if (!pending(i, k) && !pending(j, k)) skip = true;
        }
        if (skip) continue;
        MPoly s = MPoly::monomial(sub(l, le[i]), 1) * g[i] - MPoly::monomial(sub(l, le[j]), 1) * g[j];
        MPoly r = normal_form(s, g, o);
        if (r.is_zero()) continue;
        g.push_back(make_monic(r, o));
        le.push_back(g.back().lead_exps(o));
        for (size_t k = 0; k + 1 < g.size(); ++k) pairs.push_back({k, g.size() - 1});
    }

    // minimalize
    std::vector<MPoly> min;
    for (size_t i = 0; i < g.size(); ++i) {
        bool redundant = false;
        for (size_t j = 0; j < g.size() && !redundant; ++j) {
            if (i == j || !divides(le[j], le[i])) continue;
            if (le[j] != le[i] || j < i) redundant = true;
        }
        if (!redundant) min.push_back(g[i]);
    }
    // inter-reduce
    std::vector<MPoly> red;
    for (size_t i = 0; i < min.size(); ++i) {
        std::vector<MPoly> others;
        for (size_t j = 0; j < min.size(); ++j)
            if (j != i) others.push_back(min[j]);
        Exps lead = min[i].lead_exps(o);
        MPoly tail = min[i];
        tail.add_term(lead, -tail.coeff(lead));
        red.push_back(MPoly::monomial(lead, 1) + normal_form(tail, others, o));
    }
    std::sort(red.begin(), red.end(), [o](const MPoly& a, const MPoly& b) {
        return mono_greater(b.lead_exps(o), a.lead_exps(o), o);
    });
    return GroebnerBasis{o, ideal.nvars, red};
}

bool ideal_member(const MPoly& f, const GroebnerBasis& g) {
    if (f.nvars() != g.nvars) fail(Errc::ShapeMismatch, "polynomial arity mismatch");
    return normal_form(f, g.basis, g.order).is_zero();
}

Ideal unit_ideal(int nvars) { return Ideal{nvars, {MPoly::constant(nvars, 1)}}; }

Ideal ideal_intersect(const Ideal& i, const Ideal& j) {
    if (i.nvars != j.nvars) fail(Errc::ShapeMismatch, "ideal arity mismatch");
    int n = i.nvars;
    MPoly t = MPoly::var(n + 1, 0);
    MPoly one_minus_t = MPoly::constant(n + 1, 1) - t;
    Ideal big{n + 1, {}};
    for (auto& p : i.gens) big.gens.push_back(t * p.insert_vars(0, 1));
    for (auto& p : j.gens) big.gens.push_back(one_minus_t * p.insert_vars(0, 1));
    GroebnerBasis gb = buchberger(big, MonoOrder::Lex);
    Ideal out{n, {}};
    for (auto& p : gb.basis) {
        if (p.lead_exps(MonoOrder::Lex)[0] != 0) continue;
        MPoly q(n);
        for (auto& [e, c] : p.terms()) q.add_term(Exps(e.begin() + 1, e.end()), c);
        out.gens.push_back(q);
    }
    return Ideal{n, buchberger(out).basis};
}

Ideal ideal_sum(const Ideal& i, const Ideal& j) {
    if (i.nvars != j.nvars) fail(Errc::ShapeMismatch, "ideal arity mismatch");
    Ideal s = i;
    s.gens.insert(s.gens.end(), j.gens.begin(), j.gens.end());
    return s;
}

bool gb_equal(const GroebnerBasis& a, const GroebnerBasis& b) {
    return a.order == b.order && a.nvars == b.nvars && a.basis == b.basis;
}

bool ideals_equal(const Ideal& i, const Ideal& j) {
    if (i.nvars != j.nvars) fail(Errc::ShapeMismatch, "ideal arity mismatch");
    return gb_equal(buchberger(i), buchberger(j));
}

MPoly simplex_coord(int N, int k) {
    if (k < 0 || k > N) fail(Errc::RangeError, "vertex index out of range");
    if (k > 0) return MPoly::var(N, k - 1);
    MPoly x0 = MPoly::constant(N, 1);
    for (int i = 0; i < N; ++i) x0 -= MPoly::var(N, i);
    return x0;
}

Ideal coordinate_ideal(int N, const std::vector<int>& idx) {
    Ideal out{N, {}};
    for (int k : idx) out.gens.push_back(simplex_coord(N, k));
    return out;
}

Ideal intersect_all(int nvars, const std::vector<Ideal>& family) {
    if (family.empty()) return unit_ideal(nvars);
    Ideal acc = family[0];
    for (size_t i = 1; i < family.size(); ++i) acc = ideal_intersect(acc, family[i]);
    return acc;
}

bool verify_ideal_lemma(int N, int n, const std::vector<std::vector<int>>& J) {
    if (n < 0 || n > N) fail(Errc::RangeError, "need 0 <= n <= N");
    for (auto& s : J)
        for (int k : s)
            if (k < 0 || k > N) fail(Errc::RangeError, "subset index out of range");
    std::vector<int> tail;
    for (int k = n + 1; k <= N; ++k) tail.push_back(k);
    Ideal t = coordinate_ideal(N, tail);

    std::vector<Ideal> fam, fam_plus;
    for (auto& s : J) {
        fam.push_back(coordinate_ideal(N, s));
        fam_plus.push_back(ideal_sum(coordinate_ideal(N, s), t));
    }
    Ideal lhs = ideal_sum(t, intersect_all(N, fam));
    Ideal rhs = intersect_all(N, fam_plus);
    return ideals_equal(lhs, rhs);
}

}  // namespace quadcx
