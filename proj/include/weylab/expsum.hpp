#pragma once

#include <complex>
#include <map>
#include <vector>

#include "weylab/fixedreal.hpp"
#include "weylab/kprofile.hpp"

namespace weylab {

using Complex = std::complex<double>;

inline constexpr int kMaxExponent = 16;

// e(theta) = exp(2*pi*i*theta) for an exact phase.
Complex unit_phase(const FixedReal& theta);

// Sparse polynomial phase: exponent -> coefficient, absent exponents are 0.
class PhasePolynomial {
public:
    PhasePolynomial() = default;

    void set(int exponent, FixedReal coeff);
    FixedReal coeff(int exponent) const;
    const std::map<int, FixedReal>& coeffs() const { return coeffs_; }
    int max_exponent() const;

    PhasePolynomial negated() const;

    // Exact phase value of sum_j alpha_j x^j (mod 1).
    FixedReal phase_at(const mpz_class& x) const;

private:
    std::map<int, FixedReal> coeffs_;
};

// Kahan-compensated complex accumulator.
class CompensatedSum {
public:
    void add(Complex v);
    Complex value() const { return sum_; }

private:
    Complex sum_{0.0, 0.0};
    Complex comp_{0.0, 0.0};
};

// sum_{x=1}^{X} e(phase(x))
Complex eval_sum(const PhasePolynomial& phase, long X);

// K(gamma) = sum_{z=1}^{X} e(-gamma z), closed form when gamma != 0.
Complex eval_K(const FixedReal& gamma, long X);

struct ShiftedPhase {
    PhasePolynomial poly;  // beta_1..beta_k
    FixedReal constant;    // beta_0
};

// Coefficients of psi(x - y) = sum beta_i x^i, exact in FixedReal.
ShiftedPhase shift_coeffs(const PhasePolynomial& phase, const mpz_class& y);

// f_y(...; gamma) = sum_{x=1}^{2X} e(psi(x-y) + gamma (x-y))
Complex eval_fy(const PhasePolynomial& phase, long y, const FixedReal& gamma,
                long X);

// delta_m = sum_{n=1}^{l} alpha_{m+i_n} C(m+i_n, i_n) h_{i_n}, m = 0..k-i_l.
std::vector<FixedReal> delta_coeffs(const PhasePolynomial& phase,
                                    const ExponentProfile& profile, int l,
                                    const std::vector<mpz_class>& h);

// Odometer over the box |h_{i_j}| <= s X^{i_j}, j = 1..l.
class HBox {
public:
    HBox(const ExponentProfile& profile, int l, long s, long X,
         std::int64_t budget_override = 0);

    mpz_class size() const;
    const std::vector<mpz_class>& bounds() const { return bounds_; }

    // Calls fn(h) for every point of the box.
    template <typename Fn>
    void for_each(Fn&& fn) const {
        std::vector<mpz_class> h(bounds_.size());
        for (size_t j = 0; j < h.size(); ++j) h[j] = -bounds_[j];
        while (true) {
            fn(h);
            size_t j = 0;
            while (j < h.size() && h[j] == bounds_[j]) {
                h[j] = -bounds_[j];
                ++j;
            }
            if (j == h.size()) break;
            h[j] += 1;
        }
    }

private:
    std::vector<mpz_class> bounds_;  // s X^{i_j}
};

// Xi = X^{-1} sum_y sum_h e(-Gamma y) e(-sum_m delta_m y^m)
Complex eval_Xi(const PhasePolynomial& phase, const ExponentProfile& profile,
                int l, const FixedReal& big_gamma, long s, long X);

// S* = max over subintervals [a,b] of [1,X] of |sum_{x=a}^{b} e(phase(x))|.
double sup_partial_sum(const PhasePolynomial& phase, long X);

// Upsilon_p = sum over the h-box of S*(delta'(h); X)^{2p},
// with delta'_1 = delta_1 + Gamma.
double eval_upsilon(const ExponentProfile& profile, int l,
                    const PhasePolynomial& phase, long s, long X,
                    const FixedReal& big_gamma = FixedReal());

}  // namespace weylab
