#pragma once

#include <chrono>
#include <map>
#include <vector>

#include "weylab/diophantine.hpp"
#include "weylab/expsum.hpp"
#include "weylab/fixedreal.hpp"
#include "weylab/kprofile.hpp"

namespace weylab {

enum class CountBackend { hashed, brute };

struct CountResult {
    mpz_class count;
    std::chrono::microseconds elapsed{0};
    CountBackend backend = CountBackend::hashed;
};

// d -> c_d: solutions of the subsystem (exponents k_2..k_t) grouped by the
// leading power-sum difference d = sigma_{s,k_1}(x).
struct SolutionDistribution {
    std::map<mpz_class, mpz_class> counts;
    std::vector<int> profile_exps;
    long s = 0;
    long X = 0;

    mpz_class total() const;
};

// J_{s,k}(X): solutions of sum x_i^j = sum y_i^j for j = 1..k.
CountResult vinogradov_count(long s, long k, long X,
                             CountBackend backend = CountBackend::hashed);

// Solutions of sum x_i^{k_j} = sum y_i^{k_j} for every exponent of the
// profile (the full mean value by orthogonality).
CountResult profile_count(const ExponentProfile& profile, long s, long X,
                          CountBackend backend = CountBackend::hashed);

SolutionDistribution solution_distribution(const ExponentProfile& profile,
                                           long s, long X);

// sum_d c_d e(alpha_k d): the mean value over the non-leading coefficients
// at fixed leading coefficient.
double restricted_meanvalue(const SolutionDistribution& dist,
                            const FixedReal& alpha_k);

// Closed-form integral of e(alpha d) over the arc set.
Complex arc_integral(const mpz_class& d, const ArcSet& arcs);

// sum_d c_d * arc_integral(d, arcs): the arc-restricted double mean value.
double arc_meanvalue(const SolutionDistribution& dist, const ArcSet& arcs);

struct SlopeFit {
    double slope;
    double intercept;
    double max_residual;
};

// Least-squares slope of log(value) against log(X).
SlopeFit slope_fit(const std::vector<std::pair<double, double>>& points);

}  // namespace weylab
