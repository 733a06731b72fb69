#pragma once

#include <gmpxx.h>
#include <vector>

namespace weylab {

// Decreasing tuple of exponents (k1,...,kt) with t < k1.  All the derived
// quantities (missing exponents, sigma, thresholds) are exact rationals.
class ExponentProfile {
public:
    explicit ExponentProfile(std::vector<int> exps);

    const std::vector<int>& exps() const { return exps_; }
    int k() const { return exps_.front(); }
    int t() const { return static_cast<int>(exps_.size()); }
    // Sum of the exponents (the quantity D).
    int degree_sum() const;
    bool contains(int e) const;

    // i_1 > i_2 > ... > i_{k-t}: exponents of {1..k1} not in the tuple.
    std::vector<int> missing_exponents() const;

private:
    std::vector<int> exps_;
};

struct SigmaResult {
    mpq_class sigma;
    int l;  // smallest maximizing l
};

struct ThresholdReport {
    mpq_class sigma;
    int sigma_l;
    int D;
    long L;
    long s_thm11;    // minimal s with s >= k(k+1)/2
    long s_thm12;    // the threshold 2L; Theorem 1.2 needs s > 2L
    long s_mv_major; // minimal s with 2s >= k^2+(1-2sigma)k+2sigma
    long s_mv_minor; // minimal s with 2s >= k(k+1)
};

struct PhiResult {
    mpq_class phi;         // with the nu adjustment
    mpq_class phi_nu_free; // nu = 0
    long m1;
    bool within_s;         // phi <= s
};

SigmaResult sigma_exponent(const ExponentProfile& profile);
ThresholdReport thresholds(const ExponentProfile& profile);

// min{ s/(k(k+1)-s), 1 } for s >= k+2.
mpq_class sigma_sk(long s, long k);

// R_l of the mean-value comparison bound, and R_l^{1/(2p)} with
// 2p = (k-i_l)(k-i_l+1).
struct RlResult {
    double r_l;
    double r_l_root;
    long two_p;
};
RlResult r_l_factor(const ExponentProfile& profile, int l, long q, long X);

// Exponent bookkeeping phi = s + (1 - (km+m1)/(k(k+1)))(sigma - nu)
// - m1/(k(k+1)), with m1 = min{k(k+1-m), s-m}.
PhiResult phi_exponent(long s, long k, long m, const mpq_class& sigma,
                       const mpq_class& nu);

}  // namespace weylab
