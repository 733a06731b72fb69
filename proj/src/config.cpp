#include "weylab/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "weylab/budget.hpp"

namespace weylab {

void ExperimentConfig::validate() const {
    if (budget_tuples <= 0 || budget_box <= 0 || budget_hbox <= 0)
        throw std::invalid_argument("budgets must be positive");
    if (!(epsilon > 0.0 && epsilon < 0.5))
        throw std::invalid_argument("epsilon must lie in (0, 0.5)");
    if (lemma_floor < 0.0 || slope_slack < 0.0)
        throw std::invalid_argument("floors and slacks must be nonnegative");
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " +
                                        std::to_string(lineno) +
                                        ": expected key=value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string()
                                          : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "seed")
            cfg.seed = std::stoull(value);
        else if (key == "epsilon")
            cfg.epsilon = std::stod(value);
        else if (key == "lemma_floor")
            cfg.lemma_floor = std::stod(value);
        else if (key == "slope_slack")
            cfg.slope_slack = std::stod(value);
        else if (key == "budget_tuples")
            cfg.budget_tuples = std::stoll(value);
        else if (key == "budget_box")
            cfg.budget_box = std::stoll(value);
        else if (key == "budget_hbox")
            cfg.budget_hbox = std::stoll(value);
        else
            throw std::invalid_argument("unknown config key: " + key);
    }
    cfg.validate();
    return cfg;
}

void apply_env_overrides(ExperimentConfig& cfg) {
    if (const char* v = std::getenv("WEYLAB_BUDGET")) {
        const std::int64_t b = std::stoll(v);
        if (b <= 0) throw std::invalid_argument("WEYLAB_BUDGET must be > 0");
        cfg.budget_tuples = b;
        cfg.budget_box = b;
        cfg.budget_hbox = b;
    }
}

void install_budgets(const ExperimentConfig& cfg) {
    budgets().tuples = cfg.budget_tuples;
    budgets().box = cfg.budget_box;
    budgets().hbox = cfg.budget_hbox;
}

}  // namespace weylab
