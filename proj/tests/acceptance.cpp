// Acceptance gate: one line per criterion, built from the verification
// catalog. Stretch cases are reported separately and never gate the exit
// status. Set FINSUB_SKIP_STRETCH=1 to leave them out.

#include <cstdio>
#include <cstdlib>
#include <map>
#include <string>

#include "finsub/verify.hpp"

using namespace finsub;

int main()
{
    const auto& catalog = verification_catalog();
    std::map<int, std::vector<const VerificationCase*>> required;
    std::vector<const VerificationCase*> stretch;
    for (const auto& c : catalog)
        (c.tag == CaseTag::required ? required[c.criterion] : stretch).push_back(&c);

    int failed = 0;
    for (const auto& [criterion, cases] : required) {
        const auto report = run_cases(cases, 1);
        double seconds = 0;
        for (const auto& r : report.cases)
            seconds += r.seconds;
        const bool ok = report.ok();
        failed += !ok;
        std::printf("%s criterion %d (%.1fs)\n", ok ? "PASS" : "FAIL", criterion, seconds);
        for (const auto& r : report.cases)
            std::printf("    %-12s %-30s %s\n", to_string(r.status).c_str(), r.id.c_str(), r.detail.c_str());
        std::fflush(stdout);
    }

    const char* skip = std::getenv("FINSUB_SKIP_STRETCH");
    for (const auto* c : stretch) {
        if (skip && std::string(skip) == "1") {
            std::printf("SKIP stretch %s (criterion %d)\n", c->id.c_str(), c->criterion);
            continue;
        }
        const auto r = run_case(*c);
        const char* word = r.status == CaseStatus::pass ? "PASS" : r.status == CaseStatus::skipped ? "SKIP" : "FAIL";
        std::printf("%s stretch %s (criterion %d, %.1fs): %s\n", word, c->id.c_str(), c->criterion, r.seconds,
                    r.detail.c_str());
        std::fflush(stdout);
    }

    std::printf("%d of %zu criteria failed\n", failed, required.size());
    return failed == 0 ? 0 : 1;
}
