#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "weylab/diophantine.hpp"
#include "weylab/expsum.hpp"
#include "weylab/fixedreal.hpp"
#include "weylab/kprofile.hpp"

namespace weylab {

// One phase polynomial per variable; the objective is
// || phi_1(x_1) + ... + phi_s(x_s) || over 0 <= x_i <= X, x != 0.
struct PolySystem {
    std::vector<PhasePolynomial> phis;
    long X = 0;

    long s() const { return static_cast<long>(phis.size()); }
};

enum class MinEngine { exhaustive, mitm };

struct MinResult {
    mpq_class value;             // exact ||.|| at the argmin
    std::vector<long> argmin;    // lexicographically smallest among ties
    MinEngine engine = MinEngine::exhaustive;

    double value_d() const { return value.get_d(); }
};

MinResult exhaustive_min(const PolySystem& sys);
MinResult mitm_min(const PolySystem& sys);

enum class TheoremGate { T11, T12, T41 };

struct BoundReport {
    bool applicable = false;
    std::string reason;
    double target = 0.0;  // X^{-sigma_target + eps}
    double value = 0.0;
    bool pass = false;
};

// Diagnostic comparison of a minimum against the cited theorem's bound;
// never treats failure as an error (constants are implicit).
BoundReport bound_check(const PolySystem& sys, const ExponentProfile& profile,
                        const MinResult& result, TheoremGate theorem,
                        double epsilon);

// Partition of [1,H] by the arc pattern of h*alpha_j (bit j set when
// h*alpha_j lies on the major arcs with l = 2).
struct HPartition {
    std::map<std::uint32_t, std::vector<long>> classes;
};

HPartition h_partition(const std::vector<FixedReal>& alpha1s, long H, long X,
                       int k);

struct Lemma42Report {
    double sum;          // sum_{h<=H} |sum_n e(h x_n)|
    double ratio;        // sum / N
    bool hypothesis_ok;  // min ||x_n|| >= 1/H
};

Lemma42Report lemma42_sum(const std::vector<FixedReal>& xs, double H);

struct WeylScanReport {
    bool gate_ok = false;  // coefficients classified minor
    double normalized_max = 0.0;
};

// max over h <= H of |sum_{x<=X} e(h phi(x))| / X for the joint phase
// phi(x) = sum_j alpha_j x^{k_j}.
WeylScanReport weyl_large_value_scan(const std::vector<FixedReal>& alphas,
                                     const ExponentProfile& profile, long H,
                                     long X);

struct ExponentFit {
    double sigma_emp;
    double max_residual;
    std::vector<long> excluded;  // X values dropped for zero minima
};

ExponentFit exponent_fit(const std::vector<std::pair<long, double>>& runs);

}  // namespace weylab
