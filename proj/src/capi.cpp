#include "quadcx.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "quadcx/cliffspin.hpp"
#include "quadcx/gen.hpp"
#include "quadcx/json_io.hpp"
#include "quadcx/suites.hpp"

using namespace quadcx;

struct qcx_report {
    VerificationReport r;
};
struct qcx_ideal {
    Ideal i;
};
struct qcx_complex {
    FreeComplex c;
};

namespace {

thread_local std::string last_error;

template <class F>
int guard(F&& f) {
    try {
        f();
        last_error.clear();
        return QCX_OK;
    } catch (const Error& e) {
        last_error = e.what();
        return static_cast<int>(e.code());
    } catch (const nlohmann::json::exception& e) {
        last_error = e.what();
        return QCX_E_JSON;
    } catch (const std::exception& e) {
        last_error = e.what();
        return QCX_E_UNKNOWN;
    }
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::string word_label(Word w) {
    if (!w) return "1";
    std::string s;
    for (int i = 0; i < 32; ++i)
        if (w >> i & 1) s += "b" + std::to_string(i + 1);
    return s;
}

}  // namespace

extern "C" {

const char* qcx_last_error(void) { return last_error.c_str(); }

const char* qcx_status_name(int status) {
    if (status == QCX_OK) return "Ok";
    if (status == QCX_E_JSON) return "JsonError";
    if (status == QCX_E_NULL_ARGUMENT) return "NullArgument";
    if (status == QCX_E_UNKNOWN) return "Unknown";
    if (status >= QCX_E_SHAPE_MISMATCH && status <= QCX_E_INTERNAL) return errc_name(static_cast<Errc>(status));
    return "Unknown";
}

void qcx_string_free(char* s) { std::free(s); }

int qcx_suite_count(void) { return static_cast<int>(suite_names().size()); }

const char* qcx_suite_name(int index) {
    if (index < 0 || index >= qcx_suite_count()) return nullptr;
    return suite_names()[index].c_str();
}

int qcx_run_suite(const char* name, uint64_t seed, int cases, qcx_report** out) {
    if (!name || !out) return QCX_E_NULL_ARGUMENT;
    return guard([&] { *out = new qcx_report{run_suite(name, seed, cases)}; });
}

int qcx_report_passed(const qcx_report* r) { return r && r->r.ok() ? 1 : 0; }

int qcx_report_failure_count(const qcx_report* r) { return r ? static_cast<int>(r->r.failures.size()) : -1; }

double qcx_report_wall_ms(const qcx_report* r) { return r ? r->r.wall_ms : 0; }

int qcx_report_json(const qcx_report* r, char** out) {
    if (!r || !out) return QCX_E_NULL_ARGUMENT;
    return guard([&] { *out = dup(report_json(r->r)); });
}

void qcx_report_free(qcx_report* r) { delete r; }

int qcx_demo_matfac(int n, int k, int cutoff, char** out) {
    if (!out) return QCX_E_NULL_ARGUMENT;
    return guard([&] { *out = dup(to_json(dt4_local_demo(n, k, cutoff)).dump(2)); });
}

int qcx_clifford_table(int n, char** out) {
    if (!out) return QCX_E_NULL_ARGUMENT;
    return guard([&] {
        if (n < 0 || n > 6) fail(Errc::RangeError, "Clifford tables are printed for 0 <= n <= 6");
        QuadSpace s = standard_quadspace(n);
        Word top = Word(1) << n;
        Json basis = Json::array(), table = Json::array();
        for (Word a = 0; a < top; ++a) basis.push_back(word_label(a));
        for (Word a = 0; a < top; ++a) {
            Json row = Json::array();
            for (Word b = 0; b < top; ++b) {
                CliffElt p = cl_word(s, a) * cl_word(s, b);
                Json entry = Json::object();
                for (auto& [w, c] : p.coeffs) entry[word_label(w)] = to_json(c);
                row.push_back(entry);
            }
            table.push_back(row);
        }
        Json j{{"n", n}, {"form", to_json(s.Q)}, {"basis", basis}, {"table", table}};
        *out = dup(j.dump(2));
    });
}

int qcx_boundary_ideal(int n, char** out) {
    if (!out) return QCX_E_NULL_ARGUMENT;
    return guard([&] {
        if (n < 1 || n > 5) fail(Errc::RangeError, "boundary ideals are computed for 1 <= n <= 5");
        SimplicialSubset K = boundary_simplex(n, n);
        Json j{{"complex", to_json(K)}, {"ideal", to_json(realization_ideal(K))}};
        *out = dup(j.dump(2));
    });
}

int qcx_sample_reduction(uint64_t seed, char** out) {
    if (!out) return QCX_E_NULL_ARGUMENT;
    return guard([&] {
        Gen g(seed);
        SelfDualComplex sd = g.self_dual(4, 2);
        IsotropicReduction r = make_reduction(trivial_representative(sd), g.positive_lift(sd));
        Json j = to_json(r);
        j["valid"] = validate_reduction(r).ok();
        *out = dup(j.dump(2));
    });
}

int qcx_ideal_from_json(const char* json, qcx_ideal** out) {
    if (!json || !out) return QCX_E_NULL_ARGUMENT;
    return guard([&] { *out = new qcx_ideal{ideal_from_json(Json::parse(json))}; });
}

int qcx_ideal_groebner_json(const qcx_ideal* ideal, char** out) {
    if (!ideal || !out) return QCX_E_NULL_ARGUMENT;
    return guard([&] { *out = dup(to_json(buchberger(ideal->i)).dump(2)); });
}

int qcx_ideal_contains(const qcx_ideal* ideal, const char* poly_json, int* contains) {
    if (!ideal || !poly_json || !contains) return QCX_E_NULL_ARGUMENT;
    return guard([&] {
        MPoly p = poly_from_json(Json::parse(poly_json), ideal->i.nvars);
        *contains = ideal_member(p, buchberger(ideal->i)) ? 1 : 0;
    });
}

void qcx_ideal_free(qcx_ideal* ideal) { delete ideal; }

int qcx_complex_from_json(const char* json, qcx_complex** out) {
    if (!json || !out) return QCX_E_NULL_ARGUMENT;
    return guard([&] { *out = new qcx_complex{complex_from_json(Json::parse(json))}; });
}

int qcx_complex_cohomology_json(const qcx_complex* c, char** out) {
    if (!c || !out) return QCX_E_NULL_ARGUMENT;
    return guard([&] {
        Json h = Json::object();
        for (auto [i, r] : cohomology(c->c)) h[std::to_string(i)] = r;
        Json j{{"complex", to_json(c->c)}, {"cohomology", h}, {"acyclic", is_acyclic(c->c)}};
        *out = dup(j.dump(2));
    });
}

void qcx_complex_free(qcx_complex* c) { delete c; }

int qcx_simplicial_json(const char* json, char** out) {
    if (!json || !out) return QCX_E_NULL_ARGUMENT;
    return guard([&] {
        SimplicialSubset K = simplicial_from_json(Json::parse(json));
        Json maxes = Json::array(), pushout = Json::array();
        for (auto& f : maximal_faces(K)) {
            maxes.push_back(f);
            pushout.push_back(verify_pushout_ideal(K, f));
        }
        Json j{{"complex", to_json(K)},
               {"face_counts", face_counts(K)},
               {"maximal", maxes},
               {"realization", to_json(realization_ideal(K))},
               {"pushout", pushout}};
        if (K.N <= 4) {
            SimplicialSubset S = subdivide(K);
            j["subdivision"] = {{"N", S.N}, {"face_counts", face_counts(S)}};
        }
        *out = dup(j.dump(2));
    });
}

}  // extern "C"
