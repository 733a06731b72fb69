#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace weylab {

struct VerifyOptions {
    bool full = false;          // include the long-running criteria
    std::uint64_t seed = 20260823;
    double epsilon = 0.05;      // exponent slack for bound diagnostics
    double lemma_floor = 0.3;   // diagnostic floor for the h-sum ratio
    double slope_slack = 1.0;   // slack on fitted log-log slopes
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool ran = false;
    bool hard = true;   // diagnostics report but never fail the suite
    bool pass = false;
    std::string detail;
    double elapsed_s = 0.0;
};

struct VerifyReport {
    std::vector<CriterionResult> criteria;
    bool all_pass() const;
};

// Runs the acceptance criteria (fast subset or all); progress lines go to
// `log` as each criterion finishes.
VerifyReport run_verify(const VerifyOptions& opt, std::ostream& log);

}  // namespace weylab
