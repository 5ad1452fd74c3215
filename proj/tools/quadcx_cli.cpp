#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "quadcx.h"

using Json = nlohmann::ordered_json;

namespace {

enum Exit { ExitOk = 0, ExitFail = 1, ExitUsage = 2, ExitError = 1 };

struct ApiError {
    int status;
    std::string msg;
};

void check(int status) {
    if (status != QCX_OK) throw ApiError{status, qcx_last_error()};
}

std::string take(char* s) {
    std::string out(s ? s : "");
    qcx_string_free(s);
    return out;
}

std::string read_input(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path);
    if (!in) throw ApiError{QCX_E_INVALID_ARGUMENT, "cannot open " + path};
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_json(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw ApiError{QCX_E_INVALID_ARGUMENT, "cannot write " + path};
    out << text << "\n";
}

std::string fmt_seq(const Json& a) {
    std::string s;
    for (auto& x : a) {
        if (!s.empty()) s += " ";
        s += x.dump();
    }
    return s;
}

std::string fmt_poly(const Json& p) {
    if (p.empty()) return "0";
    std::string s;
    for (auto& t : p) {
        std::string c = t["coeff"].get<std::string>(), mono;
        auto e = t["exps"];
        for (size_t i = 0; i < e.size(); ++i) {
            int k = e[i].get<int>();
            if (!k) continue;
            if (!mono.empty()) mono += "*";
            mono += "x" + std::to_string(i + 1);
            if (k > 1) mono += "^" + std::to_string(k);
        }
        bool neg = c[0] == '-';
        if (neg) c = c.substr(1);
        if (s.empty()) s = neg ? "-" : "";
        else s += neg ? " - " : " + ";
        if (mono.empty()) s += c;
        else s += (c == "1" ? "" : c + "*") + mono;
    }
    return s;
}

void print_basis(const Json& gb) {
    std::cout << "groebner basis (" << gb["order"].get<std::string>() << ", " << gb["nvars"] << " vars):\n";
    for (auto& p : gb["basis"]) std::cout << "  " << fmt_poly(p) << "\n";
    if (gb["basis"].empty()) std::cout << "  (zero ideal)\n";
}

std::string fmt_cliff(const Json& entry) {
    if (entry.empty()) return "0";
    std::string s;
    for (auto& [w, c] : entry.items()) {
        std::string v = c.get<std::string>();
        bool neg = v[0] == '-';
        if (neg) v = v.substr(1);
        s += s.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
        if (w == "1") s += v;
        else s += (v == "1" ? "" : v) + w;
    }
    return s;
}

int cmd_verify(const std::string& suite, uint64_t seed, int cases, const std::string& json_out) {
    std::vector<std::string> names;
    if (suite == "all")
        for (int i = 0; i < qcx_suite_count(); ++i) names.push_back(qcx_suite_name(i));
    else
        names.push_back(suite);
    bool ok = true, quiet = json_out == "-";
    Json all = Json::array();
    for (auto& name : names) {
        qcx_report* r = nullptr;
        int st = qcx_run_suite(name.c_str(), seed, cases, &r);
        if (st == QCX_E_UNKNOWN_SUITE || st == QCX_E_RANGE_ERROR) {
            std::cerr << "error: " << qcx_last_error() << "\n";
            return ExitUsage;
        }
        check(st);
        char* js = nullptr;
        int jst = qcx_report_json(r, &js);
        bool passed = qcx_report_passed(r);
        int nfail = qcx_report_failure_count(r);
        double ms = qcx_report_wall_ms(r);
        qcx_report_free(r);
        check(jst);
        Json rep = Json::parse(take(js));
        ok = ok && passed;
        all.push_back(rep);
        if (quiet) continue;
        std::printf("%-14s %s  %d cases, %d failed, %.0f ms\n", name.c_str(), passed ? "PASS" : "FAIL", cases, nfail, ms);
        int shown = 0;
        for (auto& f : rep["failures"]) {
            if (++shown > 10) {
                std::printf("  ... %d more\n", nfail - 10);
                break;
            }
            std::printf("  case %s: %s (expected %s, got %s)\n", f["case"].get<std::string>().c_str(),
                        f["condition"].get<std::string>().c_str(), f["expected"].get<std::string>().c_str(),
                        f["actual"].get<std::string>().c_str());
        }
    }
    if (!json_out.empty()) write_json(json_out, (suite == "all" ? all : all[0]).dump(2));
    return ok ? ExitOk : ExitFail;
}

int cmd_demo_matfac(int n, int k, int cutoff, const std::string& json_out) {
    char* s = nullptr;
    check(qcx_demo_matfac(n, k, cutoff, &s));
    std::string text = take(s);
    if (!json_out.empty()) {
        write_json(json_out, text);
        if (json_out == "-") return ExitOk;
    }
    Json j = Json::parse(text);
    std::cout << "Koszul matrix factorization, n=" << n << " k=" << k << " cutoff=" << j["cutoff"] << "\n";
    std::cout << "  h0: " << fmt_seq(j["h0"]) << "\n";
    std::cout << "  h1: " << fmt_seq(j["h1"]) << "\n";
    std::cout << "  total " << j["total"] << ", expected even/odd " << j["expected_even"] << "/" << j["expected_odd"]
              << ", concentrated in degree 0: " << (j["concentrated"].get<bool>() ? "yes" : "no") << "\n";
    if (!j["stabilized"].get<bool>()) std::cout << "  warning: " << j["warning"].get<std::string>() << "\n";
    std::cout << (j["matches"].get<bool>() ? "matches" : "MISMATCH") << "\n";
    return j["matches"].get<bool>() ? ExitOk : ExitFail;
}

int cmd_demo_ideal(int n, const std::string& json_out) {
    char* s = nullptr;
    check(qcx_boundary_ideal(n, &s));
    std::string text = take(s);
    if (!json_out.empty()) {
        write_json(json_out, text);
        if (json_out == "-") return ExitOk;
    }
    Json j = Json::parse(text);
    std::cout << "realization ideal of the boundary of the " << n << "-simplex\n";
    print_basis(j["ideal"]);
    return ExitOk;
}

int cmd_demo_reduction(uint64_t seed, const std::string& json_out) {
    char* s = nullptr;
    check(qcx_sample_reduction(seed, &s));
    std::string text = take(s);
    if (!json_out.empty()) {
        write_json(json_out, text);
        if (json_out == "-") return ExitOk;
    }
    Json j = Json::parse(text);
    auto& mid = j["mid"];
    std::cout << "isotropic reduction (seed " << seed << ")\n  middle ranks:";
    for (auto& [d, r] : mid["ranks"].items()) std::cout << " " << d << ":" << r;
    std::cout << "\n  generalized: " << (j["generalized"].get<bool>() ? "yes" : "no")
              << "\n  valid: " << (j["valid"].get<bool>() ? "yes" : "no") << "\n";
    return j["valid"].get<bool>() ? ExitOk : ExitFail;
}

int cmd_clifford(int n, const std::string& json_out) {
    char* s = nullptr;
    check(qcx_clifford_table(n, &s));
    std::string text = take(s);
    if (!json_out.empty()) {
        write_json(json_out, text);
        if (json_out == "-") return ExitOk;
    }
    Json j = Json::parse(text);
    std::vector<std::string> basis;
    for (auto& b : j["basis"]) basis.push_back(b.get<std::string>());
    std::vector<std::vector<std::string>> cells;
    size_t w = 1;
    for (auto& b : basis) w = std::max(w, b.size());
    for (auto& row : j["table"]) {
        cells.emplace_back();
        for (auto& e : row) {
            cells.back().push_back(fmt_cliff(e));
            w = std::max(w, cells.back().back().size());
        }
    }
    std::cout << "Cl(B_" << n << "), form:";
    for (auto& row : j["form"]) {
        std::cout << " [";
        for (size_t i = 0; i < row.size(); ++i) std::cout << (i ? " " : "") << row[i].get<std::string>();
        std::cout << "]";
    }
    std::cout << "\n";
    auto pad = [&](const std::string& x) { return x + std::string(w - x.size() + 1, ' '); };
    std::cout << pad("") << "| ";
    for (auto& b : basis) std::cout << pad(b);
    std::cout << "\n" << std::string((w + 1) * (basis.size() + 1) + 2, '-') << "\n";
    for (size_t i = 0; i < basis.size(); ++i) {
        std::cout << pad(basis[i]) << "| ";
        for (auto& c : cells[i]) std::cout << pad(c);
        std::cout << "\n";
    }
    return ExitOk;
}

int cmd_eval_groebner(const std::string& path, const std::string& member, const std::string& json_out) {
    std::string text = read_input(path);
    qcx_ideal* I = nullptr;
    check(qcx_ideal_from_json(text.c_str(), &I));
    char* s = nullptr;
    int st = qcx_ideal_groebner_json(I, &s);
    int contains = -1;
    if (st == QCX_OK && !member.empty()) st = qcx_ideal_contains(I, member.c_str(), &contains);
    qcx_ideal_free(I);
    std::string gb = take(s);
    check(st);
    Json j = Json::parse(gb);
    if (contains >= 0) j["contains"] = contains == 1;
    if (!json_out.empty()) {
        write_json(json_out, j.dump(2));
        if (json_out == "-") return ExitOk;
    }
    print_basis(j);
    if (contains >= 0) std::cout << "member: " << (contains ? "yes" : "no") << "\n";
    return ExitOk;
}

int cmd_eval_cohomology(const std::string& path, const std::string& json_out) {
    std::string text = read_input(path);
    qcx_complex* c = nullptr;
    check(qcx_complex_from_json(text.c_str(), &c));
    char* s = nullptr;
    int st = qcx_complex_cohomology_json(c, &s);
    qcx_complex_free(c);
    std::string out = take(s);
    check(st);
    if (!json_out.empty()) {
        write_json(json_out, out);
        if (json_out == "-") return ExitOk;
    }
    Json j = Json::parse(out);
    std::cout << "cohomology ranks:";
    for (auto& [d, r] : j["cohomology"].items()) std::cout << " H^" << d << "=" << r;
    std::cout << "\nacyclic: " << (j["acyclic"].get<bool>() ? "yes" : "no") << "\n";
    return ExitOk;
}

int cmd_eval_simplicial(const std::string& path, const std::string& json_out) {
    std::string text = read_input(path);
    char* s = nullptr;
    check(qcx_simplicial_json(text.c_str(), &s));
    std::string out = take(s);
    if (!json_out.empty()) {
        write_json(json_out, out);
        if (json_out == "-") return ExitOk;
    }
    Json j = Json::parse(out);
    std::cout << "simplicial subset of the " << j["complex"]["N"] << "-simplex\n";
    std::cout << "  faces by dimension: " << fmt_seq(j["face_counts"]) << "\n  maximal:";
    for (auto& f : j["maximal"]) std::cout << " " << f.dump();
    std::cout << "\n";
    print_basis(j["realization"]);
    bool all = true;
    for (auto& b : j["pushout"]) all = all && b.get<bool>();
    std::cout << "pushout ideal identity: " << (all ? "holds" : "FAILS") << "\n";
    if (j.contains("subdivision"))
        std::cout << "subdivision faces by dimension: " << fmt_seq(j["subdivision"]["face_counts"]) << "\n";
    return all ? ExitOk : ExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quadcx: exact checks for self-dual complexes, Clifford algebras and friends"};
    app.require_subcommand(1);
    std::string json_out;

    std::string suite;
    uint64_t seed = 0;
    int cases = 100;
    auto* verify = app.add_subcommand("verify", "run a verification suite (or all)");
    verify->add_option("suite", suite, "suite name or 'all'")->required();
    verify->add_option("--seed", seed, "base seed")->capture_default_str();
    verify->add_option("--cases", cases, "cases per suite")->capture_default_str();
    verify->add_option("--json-out", json_out, "write the report as JSON ('-' for stdout)");

    auto* list = app.add_subcommand("list", "list suite names");

    auto* demo = app.add_subcommand("demo", "worked examples");
    demo->require_subcommand(1);
    int n = 2, k = 1, cutoff = 6, boundary = 2;
    uint64_t demo_seed = 1;
    auto* dmat = demo->add_subcommand("matfac", "graded cohomology of a Koszul factorization on a linear cone");
    dmat->add_option("--n", n, "even ambient rank")->required();
    dmat->add_option("--k", k, "cone rank")->required();
    dmat->add_option("--cutoff", cutoff, "weight cutoff")->capture_default_str();
    dmat->add_option("--json-out", json_out);
    auto* dideal = demo->add_subcommand("ideal", "realization ideal of a simplex boundary");
    dideal->add_option("--boundary", boundary, "simplex dimension (1..5)")->required();
    dideal->add_option("--json-out", json_out);
    auto* dred = demo->add_subcommand("reduction", "random isotropic reduction");
    dred->add_option("--seed", demo_seed)->capture_default_str();
    dred->add_option("--json-out", json_out);

    auto* show = app.add_subcommand("show", "tables");
    show->require_subcommand(1);
    int cl_n = 2;
    auto* scl = show->add_subcommand("clifford-table", "multiplication table of the Clifford algebra of the antidiagonal form");
    scl->add_option("n", cl_n, "rank (0..6)")->required();
    scl->add_option("--json-out", json_out);

    auto* eval = app.add_subcommand("eval", "evaluate JSON input from a file or stdin");
    eval->require_subcommand(1);
    std::string input = "-", member;
    auto* egb = eval->add_subcommand("groebner", "reduced Groebner basis of an ideal");
    egb->add_option("input", input, "JSON file, '-' for stdin")->capture_default_str();
    egb->add_option("--member", member, "polynomial (JSON) to test for membership");
    egb->add_option("--json-out", json_out);
    auto* ecoh = eval->add_subcommand("cohomology", "cohomology ranks of a complex");
    ecoh->add_option("input", input, "JSON file, '-' for stdin")->capture_default_str();
    ecoh->add_option("--json-out", json_out);
    auto* esimp = eval->add_subcommand("simplicial", "realization ideal and subdivision of a simplicial subset");
    esimp->add_option("input", input, "JSON file, '-' for stdin")->capture_default_str();
    esimp->add_option("--json-out", json_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ExitOk : ExitUsage;
    }

    try {
        if (*verify) return cmd_verify(suite, seed, cases, json_out);
        if (*list) {
            for (int i = 0; i < qcx_suite_count(); ++i) std::cout << qcx_suite_name(i) << "\n";
            return ExitOk;
        }
        if (*dmat) return cmd_demo_matfac(n, k, cutoff, json_out);
        if (*dideal) return cmd_demo_ideal(boundary, json_out);
        if (*dred) return cmd_demo_reduction(demo_seed, json_out);
        if (*scl) return cmd_clifford(cl_n, json_out);
        if (*egb) return cmd_eval_groebner(input, member, json_out);
        if (*ecoh) return cmd_eval_cohomology(input, json_out);
        if (*esimp) return cmd_eval_simplicial(input, json_out);
    } catch (const ApiError& e) {
        std::cerr << "error (" << qcx_status_name(e.status) << "): " << e.msg << "\n";
        return e.status == QCX_E_RANGE_ERROR || e.status == QCX_E_INVALID_ARGUMENT || e.status == QCX_E_JSON
                   ? ExitUsage
                   : ExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return ExitError;
    }
    return ExitUsage;
}
