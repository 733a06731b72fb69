#pragma once

#include <cstdint>
#include <string>

namespace weylab {

// Runtime knobs: seed, enumeration budgets, and the diagnostic constants
// that have no canonical values and therefore live in configuration.
struct ExperimentConfig {
    std::uint64_t seed = 20260823;
    double epsilon = 0.05;       // exponent slack in bound diagnostics
    double lemma_floor = 0.3;    // diagnostic floor for the h-sum ratio
    double slope_slack = 1.0;    // slack on fitted log-log slopes
    std::int64_t budget_tuples = 200000000;
    std::int64_t budget_box = 100000000;
    std::int64_t budget_hbox = 100000000;

    void validate() const;  // throws std::invalid_argument
};

// Flat key=value file; '#' starts a comment; unknown keys rejected.
ExperimentConfig load_config(const std::string& path);

// WEYLAB_BUDGET overrides every enumeration budget.
void apply_env_overrides(ExperimentConfig& cfg);

// Publishes the budgets to the global budget registry.
void install_budgets(const ExperimentConfig& cfg);

}  // namespace weylab
