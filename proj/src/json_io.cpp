#include "quadcx/json_io.hpp"

namespace quadcx {

namespace {

void need(bool ok, const std::string& msg) {
    if (!ok) fail(Errc::InvalidArgument, msg);
}

}  // namespace

Json to_json(const Rat& r) { return rat_str(r); }

Rat rat_from_json(const Json& j) {
    if (j.is_string()) return rat_parse(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long>());
    fail(Errc::InvalidArgument, "rational must be a \"p/q\" string or an integer");
}

Json to_json(const Mat& m) {
    Json out = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        out.push_back(row);
    }
    return out;
}

Mat mat_from_json(const Json& j, int rows, int cols) {
    need(j.is_array(), "matrix must be an array of rows");
    int r = static_cast<int>(j.size());
    int c = r ? static_cast<int>(j[0].size()) : std::max(cols, 0);
    if (rows >= 0) need(r == rows, "matrix has the wrong number of rows");
    if (cols >= 0) need(c == cols, "matrix has the wrong number of columns");
    Mat m(r, c);
    for (int i = 0; i < static_cast<int>(j.size()); ++i) {
        need(j[i].is_array() && static_cast<int>(j[i].size()) == c, "ragged matrix");
        for (int k = 0; k < c; ++k) m(i, k) = rat_from_json(j[i][k]);
    }
    return m;
}

Json to_json(const MPoly& p) {
    Json out = Json::array();
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
        out.push_back({{"exps", it->first}, {"coeff", to_json(it->second)}});
    return out;
}

MPoly poly_from_json(const Json& j, int nvars) {
    need(j.is_array(), "polynomial must be a list of terms");
    MPoly p(nvars);
    for (auto& t : j) {
        need(t.contains("exps") && t.contains("coeff"), "term needs exps and coeff");
        auto e = t["exps"].get<std::vector<int>>();
        need(static_cast<int>(e.size()) == nvars, "exponent vector has the wrong length");
        for (int x : e) need(x >= 0, "negative exponent");
        p.add_term(e, rat_from_json(t["coeff"]));
    }
    return p;
}

Json to_json(const GroebnerBasis& g) {
    Json basis = Json::array();
    for (auto& p : g.basis) basis.push_back(to_json(p));
    return {{"nvars", g.nvars}, {"order", g.order == MonoOrder::Lex ? "lex" : "grevlex"}, {"basis", basis}};
}

Ideal ideal_from_json(const Json& j) {
    need(j.is_object() && j.contains("nvars") && j.contains("gens"), "ideal needs nvars and gens");
    Ideal out{j["nvars"].get<int>(), {}};
    need(out.nvars >= 0, "negative variable count");
    for (auto& g : j["gens"]) out.gens.push_back(poly_from_json(g, out.nvars));
    return out;
}

Json to_json(const FreeComplex& c) {
    Json ranks = Json::object(), diffs = Json::object();
    if (!c.empty_range())
        for (int i = c.lo(); i <= c.hi(); ++i) {
            ranks[std::to_string(i)] = c.rank(i);
            if (i < c.hi()) diffs[std::to_string(i)] = to_json(c.d(i));
        }
    return {{"lo", c.empty_range() ? 0 : c.lo()}, {"hi", c.empty_range() ? -1 : c.hi()}, {"ranks", ranks}, {"diffs", diffs}};
}

FreeComplex complex_from_json(const Json& j) {
    need(j.is_object() && j.contains("lo") && j.contains("hi"), "complex needs lo and hi");
    int lo = j["lo"].get<int>(), hi = j["hi"].get<int>();
    if (hi < lo) return FreeComplex();
    std::vector<int> ranks;
    std::vector<Mat> diffs;
    for (int i = lo; i <= hi; ++i) {
        auto key = std::to_string(i);
        int r = j.contains("ranks") && j["ranks"].contains(key) ? j["ranks"][key].get<int>() : 0;
        need(r >= 0, "negative rank");
        ranks.push_back(r);
    }
    for (int i = lo; i < hi; ++i) {
        auto key = std::to_string(i);
        int r = ranks[i + 1 - lo], c = ranks[i - lo];
        if (j.contains("diffs") && j["diffs"].contains(key)) diffs.push_back(mat_from_json(j["diffs"][key], r, c));
        else diffs.push_back(Mat(r, c));
    }
    FreeComplex out(lo, ranks, diffs);
    if (!is_complex(out)) fail(Errc::NotAComplex, "d^2 != 0");
    return out;
}

Json to_json(const ChainMap& f) {
    Json comps = Json::object();
    for (auto& [i, m] : f.comps) comps[std::to_string(i)] = to_json(m);
    return {{"src", to_json(f.src)}, {"tgt", to_json(f.tgt)}, {"comps", comps}};
}

Json to_json(const IsotropicReduction& r) {
    return {{"mid", to_json(r.mid)}, {"f", to_json(r.f)}, {"e", to_json(r.e)}, {"generalized", r.generalized}};
}

Json to_json(const SimplicialSubset& k) {
    Json faces = Json::array();
    for (auto& f : k.faces) faces.push_back(f);
    return {{"N", k.N}, {"faces", faces}};
}

SimplicialSubset simplicial_from_json(const Json& j) {
    need(j.is_object() && j.contains("N") && j.contains("faces"), "simplicial subset needs N and faces");
    std::vector<Face> gens;
    for (auto& f : j["faces"]) gens.push_back(f.get<Face>());
    return simplicial_from(j["N"].get<int>(), gens);
}

Json to_json(const GradedCohomology& h) {
    return {{"h0", h.h0}, {"h1", h.h1}, {"stabilized", h.stabilized}, {"warning", h.warning}};
}

Json to_json(const Dt4Report& r) {
    return {{"n", r.n},
            {"k", r.k},
            {"cutoff", r.cutoff},
            {"h0", r.coh.h0},
            {"h1", r.coh.h1},
            {"stabilized", r.coh.stabilized},
            {"warning", r.coh.warning},
            {"total", r.total},
            {"expected_even", r.expected_even},
            {"expected_odd", r.expected_odd},
            {"concentrated", r.concentrated},
            {"matches", r.matches}};
}

}  // namespace quadcx
