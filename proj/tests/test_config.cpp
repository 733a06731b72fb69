#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include "weylab/budget.hpp"
#include "weylab/config.hpp"

using namespace weylab;

namespace {

std::string write_temp(const std::string& body) {
    const std::string path = "test_config_tmp.cfg";
    std::ofstream out(path);
    out << body;
    return path;
}

}  // namespace

TEST_SUITE_BEGIN("config");

TEST_CASE("defaults validate") {
    ExperimentConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.epsilon == 0.05);
    CHECK(cfg.lemma_floor == 0.3);
    CHECK(cfg.slope_slack == 1.0);
}

TEST_CASE("flat key=value parsing") {
    const auto path = write_temp(
        "# comment line\n"
        "seed = 99\n"
        "epsilon=0.1\n"
        "budget_tuples = 1000   # trailing comment\n"
        "\n");
    const auto cfg = load_config(path);
    CHECK(cfg.seed == 99);
    CHECK(cfg.epsilon == 0.1);
    CHECK(cfg.budget_tuples == 1000);
    CHECK(cfg.budget_box == 100000000);  // untouched default
    std::remove(path.c_str());
}

TEST_CASE("bad config files are rejected") {
    const auto p1 = write_temp("unknown_key = 3\n");
    CHECK_THROWS_AS(load_config(p1), std::invalid_argument);
    const auto p2 = write_temp("no equals sign here\n");
    CHECK_THROWS_AS(load_config(p2), std::invalid_argument);
    const auto p3 = write_temp("epsilon = 0.7\n");
    CHECK_THROWS_AS(load_config(p3), std::invalid_argument);
    const auto p4 = write_temp("budget_box = -5\n");
    CHECK_THROWS_AS(load_config(p4), std::invalid_argument);
    std::remove(p1.c_str());
}

TEST_CASE("environment override of the enumeration budgets") {
    ExperimentConfig cfg;
    setenv("WEYLAB_BUDGET", "12345", 1);
    apply_env_overrides(cfg);
    CHECK(cfg.budget_tuples == 12345);
    CHECK(cfg.budget_box == 12345);
    CHECK(cfg.budget_hbox == 12345);
    unsetenv("WEYLAB_BUDGET");

    const auto saved = budgets();
    install_budgets(cfg);
    CHECK(budgets().tuples == 12345);
    budgets() = saved;
}

TEST_SUITE_END();
