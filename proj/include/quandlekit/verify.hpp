#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quandlekit/quandle.hpp"

namespace qk {

struct CheckInstance {
    std::string link;
    std::string ring;  // empty for symbolic checks
    bool pass = true;
    bool deviation = false;       // known specialization degeneracy, recorded
    bool not_applicable = false;  // e.g. virtual link for a classical-only law
    std::string note;
};

struct CheckResult {
    std::string name;
    std::vector<CheckInstance> instances;

    int failures(bool strict) const;
    int deviations() const;
    bool ok(bool strict) const { return failures(strict) == 0; }
};

struct VerifyOptions {
    std::vector<std::string> links;   // empty: whole catalog
    std::vector<FiniteRing> rings;    // empty: default_rings()
    SearchBudget budget;
    uint64_t seed = 1;
    bool strict = false;
    std::string only_check;  // empty: all checks
};

std::vector<std::string> verify_check_names();
std::vector<CheckResult> run_verify(const VerifyOptions& opt);

// true when (check, link, ring) is a recorded specialization degeneracy
bool is_known_deviation(const std::string& check, const std::string& link, const std::string& ring);

std::string format_check_result(const CheckResult& r, bool strict, bool verbose);

}  // namespace qk
