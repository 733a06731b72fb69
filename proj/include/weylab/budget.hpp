#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace weylab {

// Thrown when an enumeration would exceed the configured work budget.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct Budgets {
    std::int64_t tuples = 200'000'000;  // mean-value tuple enumeration
    std::int64_t hbox = 100'000'000;    // h-box enumeration
    std::int64_t box = 100'000'000;     // fractional-part search box
};

Budgets& budgets();

}  // namespace weylab
