#pragma once
// Certification harness: named suites of checks covering the exact
// finite-sum identities, the quadrature closed forms, the reference value
// table, and the symbolic family reductions. Every check produces one
// structured pass/fail record; reports serialize deterministically (cases
// sorted by label) apart from the wall-clock field.

#include "altzeta/numeric.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace altzeta {

// Pinned absolute comparison tolerances. These are part of the contract of
// the verification suites and are never loosened at run time.
inline constexpr const char* kTolQuadMatch = "1e-25";       // closed form vs quadrature
inline constexpr const char* kTolVariantMatch = "1e-30";    // agreement of symbolic variants
inline constexpr const char* kTolAccelMatch = "1e-8";       // vs accelerated nested sums
inline constexpr const char* kTolRelation = "1e-20";        // two-sided relations
inline constexpr const char* kTolAdjudicationGap = "1e-10"; // rejected variants must miss by this

struct CaseResult {
    std::string label;
    nlohmann::json params = nlohmann::json::object();
    std::string lhs;       // decimal value or canonical expression
    std::string rhs;
    std::string residual;  // |lhs - rhs| for numeric checks, "0" for exact hits
    std::string tolerance; // "0" means exact equality was required
    std::string status;    // "pass" | "fail" | "skipped"

    nlohmann::json to_json() const;
};

struct VerificationReport {
    std::string suite;
    long precision_digits = 0;
    std::vector<CaseResult> cases; // sorted by label
    double wall_seconds = 0;

    int count(const char* status) const;
    bool all_passed() const;
    nlohmann::json to_json() const;
};

struct VerifyOptions {
    long digits = 40;               // working precision of numeric checks
    int jobs = 1;                   // accepted, but currently serialized: the
                                    // big-float working precision is process-wide
    ConstantCache* cache = nullptr; // shared constant store (optional)
};

// "exact", "quadrature", "fixtures", "theorems", "all".
const std::vector<std::string>& suite_names();

// Runs one suite; unknown names raise CapabilityError.
VerificationReport run_suite(const std::string& suite, const VerifyOptions& options);

} // namespace altzeta
