#pragma once

#include <cstdint>

#include "weylab/fixedreal.hpp"

namespace weylab {

// Counter-based generator: deterministic given (seed, counter), no state
// shared between call sites, replayable across platforms.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next();
    // Uniform in [0, n)
    std::uint64_t next_below(std::uint64_t n);
    double next_unit();
    // Uniform FixedReal built from whole 64-bit words.
    FixedReal next_fixed(int bits = FixedReal::kDefaultBits);

    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

}  // namespace weylab
