// Acceptance suite: runs every exit criterion over the full catalog and the
// default coefficient rings, one line per criterion.  All checks are exact
// algebra; recorded specialization degeneracies are reported but do not fail
// a criterion.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "quandlekit/verify.hpp"

namespace {

struct Criterion {
    const char* id;
    const char* title;
    std::vector<const char*> checks;
};

const Criterion kCriteria[] = {
    {"criterion-1", "quandle axioms and mediality for every constructed quandle", {"quandle-axioms"}},
    {"criterion-2", "operation identities and group laws on finite shadows",
     {"group-laws", "cor14-eq-def6"}},
    {"criterion-3", "two-block construction matches the medial quandle", {"thm20-shadow"}},
    {"criterion-4", "peripheral structure of the longitudes",
     {"longitude-phi", "longitude-annihilated", "longitude-sum", "lemma18"}},
    {"criterion-5", "kernel quotient is a trivial line generated by m1-m2", {"lemma19-shadow"}},
    {"criterion-6", "frozen Alexander polynomial values", {"alexander-values"}},
    {"criterion-7", "trivial quandles over distinct modules", {"counterexample-shadow"}},
    {"criterion-8", "curl invariance smoke test", {"invariance-smoke"}},
};

}  // namespace

int main() {
    qk::VerifyOptions opt;  // full catalog, default rings, fixed seed
    std::vector<qk::CheckResult> results = qk::run_verify(opt);
    std::map<std::string, const qk::CheckResult*> by_name;
    for (const auto& r : results) by_name[r.name] = &r;

    bool all_ok = true;
    for (const auto& crit : kCriteria) {
        bool ok = true;
        int instances = 0, deviations = 0, napp = 0;
        std::vector<std::string> failures;
        for (const char* name : crit.checks) {
            const qk::CheckResult* r = by_name.at(name);
            ok = ok && r->ok(false);
            deviations += r->deviations();
            for (const auto& inst : r->instances) {
                ++instances;
                if (inst.not_applicable) ++napp;
                if (!inst.pass && !inst.not_applicable)
                    failures.push_back(std::string(name) + " " + inst.link +
                                       (inst.ring.empty() ? "" : " @ " + inst.ring) + ": " + inst.note);
            }
        }
        all_ok = all_ok && ok;
        std::cout << (ok ? "PASS " : "FAIL ") << crit.id << " (" << crit.title << "): " << instances
                  << " instances";
        if (deviations) std::cout << ", " << deviations << " recorded deviations";
        if (napp) std::cout << ", " << napp << " n/a";
        std::cout << "\n";
        for (const auto& f : failures) std::cout << "       " << f << "\n";
    }
    return all_ok ? 0 : 1;
}
