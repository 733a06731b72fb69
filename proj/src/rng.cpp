#include "weylab/rng.hpp"

namespace weylab {

namespace {

// splitmix64 finalizer
std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t CounterRng::next() { return mix(seed_ ^ mix(counter_++)); }

std::uint64_t CounterRng::next_below(std::uint64_t n) {
    return n == 0 ? 0 : next() % n;
}

double CounterRng::next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

FixedReal CounterRng::next_fixed(int bits) {
    mpz_class v = 0;
    for (int b = 0; b < bits; b += 64) {
        v <<= 64;
        v |= mpz_class(static_cast<unsigned long>(next()));
    }
    mpz_fdiv_r_2exp(v.get_mpz_t(), v.get_mpz_t(), bits);
    return FixedReal::from_rational(v, mpz_class(1) << bits, bits);
}

}  // namespace weylab
