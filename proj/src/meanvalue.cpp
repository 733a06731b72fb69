#include "weylab/meanvalue.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

#include "weylab/budget.hpp"

namespace weylab {

namespace {

using Clock = std::chrono::steady_clock;

// x^e tables per constrained exponent; overflow-checked so that s * X^e
// stays within int64.
std::vector<std::vector<std::int64_t>> pow_tables(const std::vector<int>& exps,
                                                  long s, long X) {
    std::vector<std::vector<std::int64_t>> tables;
    for (int e : exps) {
        std::vector<std::int64_t> tab(X + 1, 0);
        for (long x = 1; x <= X; ++x) {
            double est = static_cast<double>(s) * std::pow(static_cast<double>(x), e);
            if (est > 4.0e18)
                throw BudgetExceeded("power sums exceed 64-bit range");
            std::int64_t p = 1;
            for (int i = 0; i < e; ++i) p *= x;
            tab[x] = p;
        }
        tables.push_back(std::move(tab));
    }
    return tables;
}

struct KeyHash {
    size_t operator()(const std::vector<std::int64_t>& v) const {
        size_t h = 0xcbf29ce484222325ULL;
        for (auto x : v) {
            h ^= static_cast<size_t>(x);
            h *= 0x100000001b3ULL;
        }
        return h;
    }
};

mpz_class binom_ll(long n, long k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

// Enumerate nondecreasing s-tuples from [1,X]; fn(tuple, weight) where
// weight is the number of ordered rearrangements.
template <typename Fn>
void for_each_multiset(long s, long X, Fn&& fn) {
    if (binom_ll(X + s - 1, s) > budgets().tuples)
        throw BudgetExceeded("tuple enumeration larger than budget");
    if (s > 20 || s * std::log2(static_cast<double>(X)) > 62.0)
        throw BudgetExceeded("representation counts exceed 64-bit range");
    std::vector<long> x(s, 1);
    std::vector<unsigned long long> factorial(s + 1, 1);
    for (long i = 1; i <= s; ++i) factorial[i] = factorial[i - 1] * i;
    while (true) {
        unsigned long long weight = factorial[s];
        long run = 1;
        for (long i = 1; i < s; ++i) {
            if (x[i] == x[i - 1]) {
                ++run;
            } else {
                weight /= factorial[run];
                run = 1;
            }
        }
        weight /= factorial[run];
        fn(x, weight);
        long j = s - 1;
        while (j >= 0 && x[j] == X) --j;
        if (j < 0) break;
        ++x[j];
        for (long i = j + 1; i < s; ++i) x[i] = x[j];
    }
}

mpz_class hashed_count(const std::vector<int>& exps, long s, long X) {
    auto tables = pow_tables(exps, s, X);
    std::unordered_map<std::vector<std::int64_t>, unsigned long long, KeyHash> reps;
    for_each_multiset(s, X, [&](const std::vector<long>& x, unsigned long long w) {
        std::vector<std::int64_t> key(exps.size(), 0);
        for (size_t j = 0; j < exps.size(); ++j)
            for (long i = 0; i < s; ++i) key[j] += tables[j][x[i]];
        reps[key] += w;
    });
    mpz_class total = 0;
    mpz_class r;
    for (const auto& [key, count] : reps) {
        r = static_cast<unsigned long>(count);
        total += r * r;
    }
    return total;
}

mpz_class brute_count(const std::vector<int>& exps, long s, long X) {
    double est = std::pow(static_cast<double>(X), 2.0 * s);
    if (est > static_cast<double>(budgets().tuples))
        throw BudgetExceeded("brute enumeration larger than budget");
    auto tables = pow_tables(exps, s, X);
    const long n = 2 * s;
    std::vector<long> v(n, 1);
    mpz_class count = 0;
    while (true) {
        bool ok = true;
        for (size_t j = 0; j < exps.size() && ok; ++j) {
            std::int64_t d = 0;
            for (long i = 0; i < s; ++i) d += tables[j][v[i]];
            for (long i = s; i < n; ++i) d -= tables[j][v[i]];
            if (d != 0) ok = false;
        }
        if (ok) ++count;
        long j = n - 1;
        while (j >= 0 && v[j] == X) {
            v[j] = 1;
            --j;
        }
        if (j < 0) break;
        ++v[j];
    }
    return count;
}

std::vector<int> full_system_exps(long k) {
    std::vector<int> exps;
    for (long j = k; j >= 1; --j) exps.push_back(static_cast<int>(j));
    return exps;
}

}  // namespace

mpz_class SolutionDistribution::total() const {
    mpz_class t = 0;
    for (const auto& [d, c] : counts) t += c;
    return t;
}

CountResult vinogradov_count(long s, long k, long X, CountBackend backend) {
    if (s < 1 || k < 1 || X < 1) throw std::invalid_argument("bad parameters");
    const auto start = Clock::now();
    CountResult r;
    r.backend = backend;
    r.count = backend == CountBackend::hashed
                  ? hashed_count(full_system_exps(k), s, X)
                  : brute_count(full_system_exps(k), s, X);
    r.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
        Clock::now() - start);
    return r;
}

CountResult profile_count(const ExponentProfile& profile, long s, long X,
                          CountBackend backend) {
    if (s < 1 || X < 1) throw std::invalid_argument("bad parameters");
    const auto start = Clock::now();
    CountResult r;
    r.backend = backend;
    r.count = backend == CountBackend::hashed
                  ? hashed_count(profile.exps(), s, X)
                  : brute_count(profile.exps(), s, X);
    r.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
        Clock::now() - start);
    return r;
}

SolutionDistribution solution_distribution(const ExponentProfile& profile,
                                           long s, long X) {
    if (s < 1 || X < 1) throw std::invalid_argument("bad parameters");
    SolutionDistribution dist;
    dist.profile_exps = profile.exps();
    dist.s = s;
    dist.X = X;

    auto tables = pow_tables(profile.exps(), s, X);
    // subsystem key (exponents k_2..k_t) -> histogram of leading power sums
    std::unordered_map<std::vector<std::int64_t>,
                       std::unordered_map<std::int64_t, unsigned long long>,
                       KeyHash>
        groups;
    for_each_multiset(s, X, [&](const std::vector<long>& x, unsigned long long w) {
        std::vector<std::int64_t> sub(profile.exps().size() - 1, 0);
        std::int64_t lead = 0;
        for (long i = 0; i < s; ++i) {
            lead += tables[0][x[i]];
            for (size_t j = 1; j < tables.size(); ++j)
                sub[j - 1] += tables[j][x[i]];
        }
        groups[sub][lead] += w;
    });

    mpz_class wu, wv;
    for (const auto& [sub, hist] : groups) {
        for (const auto& [u, cu] : hist) {
            wu = static_cast<unsigned long>(cu);
            for (const auto& [v, cv] : hist) {
                wv = static_cast<unsigned long>(cv);
                dist.counts[mpz_class(u - v)] += wu * wv;
            }
        }
    }
    return dist;
}

double restricted_meanvalue(const SolutionDistribution& dist,
                            const FixedReal& alpha_k) {
    double acc = 0.0, comp = 0.0;
    for (const auto& [d, c] : dist.counts) {
        if (d < 0) continue;  // symmetry c_d = c_{-d}
        const double weight = (d == 0) ? 1.0 : 2.0;
        const double term =
            weight * c.get_d() *
            std::cos(2.0 * std::numbers::pi * alpha_k.mul_int(d).to_double());
        const double y = term - comp;
        const double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    return acc;
}

Complex arc_integral(const mpz_class& d, const ArcSet& arcs) {
    if (d == 0) return {arcs.measure(), 0.0};
    const double dd = d.get_d();
    Complex total{0.0, 0.0};
    const Complex denom{0.0, 2.0 * std::numbers::pi * dd};
    for (const auto& iv : arcs.intervals()) {
        const Complex ev = std::polar(1.0, 2.0 * std::numbers::pi * dd * iv.hi);
        const Complex eu = std::polar(1.0, 2.0 * std::numbers::pi * dd * iv.lo);
        total += (ev - eu) / denom;
    }
    return total;
}

double arc_meanvalue(const SolutionDistribution& dist, const ArcSet& arcs) {
    double acc = 0.0, comp = 0.0;
    for (const auto& [d, c] : dist.counts) {
        if (d < 0) continue;
        const double weight = (d == 0) ? 1.0 : 2.0;
        const double term = weight * c.get_d() * arc_integral(d, arcs).real();
        const double y = term - comp;
        const double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    return acc;
}

SlopeFit slope_fit(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3)
        throw std::invalid_argument("slope_fit needs at least 3 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(points.size());
    for (const auto& [X, v] : points) {
        if (X <= 0 || v <= 0)
            throw std::invalid_argument("slope_fit needs positive data");
        const double lx = std::log(X), ly = std::log(v);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    SlopeFit fit;
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    fit.max_residual = 0.0;
    for (const auto& [X, v] : points) {
        const double r =
            std::abs(std::log(v) - (fit.intercept + fit.slope * std::log(X)));
        fit.max_residual = std::max(fit.max_residual, r);
    }
    return fit;
}

}  // namespace weylab
