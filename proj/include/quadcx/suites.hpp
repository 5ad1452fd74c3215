#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace quadcx {

struct CaseFailure {
    std::string case_id;
    std::string condition;
    std::string expected;
    std::string actual;
};

struct VerificationReport {
    std::string suite;
    std::uint64_t seed = 0;
    int cases = 0;
    std::vector<CaseFailure> failures;
    double wall_ms = 0;  // not serialized
    bool ok() const { return failures.empty(); }
};

// splicing, selfdual, isored, connectivity, clifford, spin-transfer, matfac, simplicial, ktheory
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);
// "all" runs every suite with the same seed and case count.
VerificationReport run_suite(const std::string& name, std::uint64_t seed, int cases);
// Case seeds depend only on (suite, seed, index).
std::uint64_t case_seed(const std::string& suite, std::uint64_t seed, int index);

// Deterministic JSON (no timing).
std::string report_json(const VerificationReport& r);

}  // namespace quadcx
