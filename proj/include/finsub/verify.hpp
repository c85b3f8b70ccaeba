#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "finsub/homology.hpp"

namespace finsub {

enum class CaseTag { required, stretch };
enum class CaseStatus { pass, fail, inconclusive, skipped };

std::string to_string(CaseTag t);
std::string to_string(CaseStatus s);

/// What a case body reports back.
struct CaseOutcome {
    CaseStatus status = CaseStatus::fail;
    std::string detail;
    std::optional<Homology> expected;
    std::optional<Homology> computed;
    std::size_t cells = 0;
};

struct VerificationCase {
    std::string id;
    std::string summary;
    int criterion = 0;  // acceptance criterion number, 0 when none
    CaseTag tag = CaseTag::required;
    /// Whether an inconclusive outcome counts against a required case.
    bool inconclusive_fails = true;
    std::function<CaseOutcome()> body;
};

/// Compares trimmed homology lists exactly and reports a per-degree diff.
/// Degrees flagged unreliable make the outcome inconclusive.
CaseOutcome compare_homology(const Homology& computed, const Homology& expected, std::size_t cells = 0);

/// A case whose body computes a homology list (and a cell count) and
/// compares it with `expected`.
VerificationCase homology_case(std::string id, std::string summary, int criterion, CaseTag tag,
                               std::function<std::pair<Homology, std::size_t>()> compute, Homology expected);

/// The full catalog, in a fixed order.
const std::vector<VerificationCase>& verification_catalog();

struct CaseReport {
    std::string id;
    int criterion = 0;
    CaseTag tag = CaseTag::required;
    bool inconclusive_fails = true;
    CaseStatus status = CaseStatus::fail;
    std::string detail;
    std::optional<Homology> expected;
    std::optional<Homology> computed;
    double seconds = 0;
    std::size_t cells = 0;

    /// Counts against the exit status.
    bool blocking() const;
};

struct Report {
    std::string suite;
    std::vector<CaseReport> cases;

    bool ok() const;
    std::size_t count(CaseStatus s) const;
    nlohmann::ordered_json to_json() const;
    static Report from_json(const nlohmann::json& j);
    std::string to_table() const;
};

/// Runs a single case. A ResourceError becomes "skipped", any other
/// exception "fail".
CaseReport run_case(const VerificationCase& c);
/// Throws Error for an unknown id.
CaseReport run_case(std::string_view id);

/// "paper" (required cases), "stretch", "all", or an id pattern where '*'
/// matches any run of characters.
std::vector<const VerificationCase*> select_cases(std::string_view filter,
                                                  const std::vector<VerificationCase>& catalog = verification_catalog());

/// Cases run concurrently on up to `jobs` threads; the report keeps catalog
/// order.
Report run_cases(const std::vector<const VerificationCase*>& cases, unsigned jobs, std::string suite = {});
Report run_suite(std::string_view filter, unsigned jobs = 1);

}  // namespace finsub
