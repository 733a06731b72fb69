#include "weylab/expsum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "weylab/budget.hpp"

namespace weylab {

Budgets& budgets() {
    static Budgets b;
    return b;
}

Complex unit_phase(const FixedReal& theta) {
    const double t = 2.0 * std::numbers::pi * theta.to_double();
    return {std::cos(t), std::sin(t)};
}

void PhasePolynomial::set(int exponent, FixedReal coeff) {
    if (exponent < 1 || exponent > kMaxExponent)
        throw std::invalid_argument("exponent outside 1..k_max");
    if (coeff.is_zero())
        coeffs_.erase(exponent);
    else
        coeffs_[exponent] = std::move(coeff);
}

FixedReal PhasePolynomial::coeff(int exponent) const {
    auto it = coeffs_.find(exponent);
    return it == coeffs_.end() ? FixedReal() : it->second;
}

int PhasePolynomial::max_exponent() const {
    return coeffs_.empty() ? 0 : coeffs_.rbegin()->first;
}

PhasePolynomial PhasePolynomial::negated() const {
    PhasePolynomial p;
    for (const auto& [j, c] : coeffs_) p.set(j, -c);
    return p;
}

FixedReal PhasePolynomial::phase_at(const mpz_class& x) const {
    FixedReal acc;
    mpz_class xp;
    for (const auto& [j, c] : coeffs_) {
        mpz_pow_ui(xp.get_mpz_t(), x.get_mpz_t(), j);
        acc = acc + c.mul_int(xp);
    }
    return acc;
}

void CompensatedSum::add(Complex v) {
    const Complex y = v - comp_;
    const Complex t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
}

Complex eval_sum(const PhasePolynomial& phase, long X) {
    if (X < 1) throw std::invalid_argument("X must be >= 1");
    CompensatedSum acc;
    for (long x = 1; x <= X; ++x) acc.add(unit_phase(phase.phase_at(x)));
    return acc.value();
}

Complex eval_K(const FixedReal& gamma, long X) {
    if (X < 1) throw std::invalid_argument("X must be >= 1");
    if (gamma.is_zero()) return {static_cast<double>(X), 0.0};
    // Closed geometric form; fall back to the direct sum when gamma is so
    // close to 0 that the r-1 division loses precision.
    if (gamma.norm() > 1e-6) {
        const Complex r = unit_phase(-gamma);
        // r^X via the exact phase X*gamma mod 1 keeps the argument accurate.
        const Complex rX = unit_phase(-gamma.mul_int(X));
        return r * (rX - 1.0) / (r - 1.0);
    }
    CompensatedSum acc;
    for (long z = 1; z <= X; ++z) acc.add(unit_phase(-gamma.mul_int(z)));
    return acc.value();
}

ShiftedPhase shift_coeffs(const PhasePolynomial& phase, const mpz_class& y) {
    const int k = std::max(phase.max_exponent(), 1);
    ShiftedPhase out;
    mpz_class neg_y = -y;
    for (int i = 0; i <= k; ++i) {
        FixedReal beta;
        mpz_class binom, pw, factor;
        for (int j = i; j <= k; ++j) {
            const FixedReal aj = phase.coeff(j);
            if (aj.is_zero()) continue;
            mpz_bin_uiui(binom.get_mpz_t(), j, i);
            mpz_pow_ui(pw.get_mpz_t(), neg_y.get_mpz_t(), j - i);
            factor = binom * pw;
            beta = beta + aj.mul_int(factor);
        }
        if (i == 0)
            out.constant = beta;
        else if (!beta.is_zero())
            out.poly.set(i, beta);
    }
    return out;
}

Complex eval_fy(const PhasePolynomial& phase, long y, const FixedReal& gamma,
                long X) {
    if (X < 1) throw std::invalid_argument("X must be >= 1");
    const ShiftedPhase sh = shift_coeffs(phase, y);
    CompensatedSum acc;
    for (long x = 1; x <= 2 * X; ++x) {
        FixedReal ph = sh.constant + sh.poly.phase_at(x) + gamma.mul_int(x - y);
        acc.add(unit_phase(ph));
    }
    return acc.value();
}

std::vector<FixedReal> delta_coeffs(const PhasePolynomial& phase,
                                    const ExponentProfile& profile, int l,
                                    const std::vector<mpz_class>& h) {
    const auto missing = profile.missing_exponents();
    if (l < 1 || l > static_cast<int>(missing.size()))
        throw std::invalid_argument("l out of range");
    if (h.size() != static_cast<size_t>(l))
        throw std::invalid_argument("h must have l entries");
    const int k = profile.k();
    const int il = missing[l - 1];
    std::vector<FixedReal> delta(k - il + 1);
    mpz_class binom, factor;
    for (int m = 0; m <= k - il; ++m) {
        for (int n = 1; n <= l; ++n) {
            const int j = m + missing[n - 1];
            if (j < 1 || j > k) continue;  // alpha_j = 0 outside 1..k
            const FixedReal aj = phase.coeff(j);
            if (aj.is_zero()) continue;
            mpz_bin_uiui(binom.get_mpz_t(), j, missing[n - 1]);
            factor = binom * h[n - 1];
            delta[m] = delta[m] + aj.mul_int(factor);
        }
    }
    return delta;
}

HBox::HBox(const ExponentProfile& profile, int l, long s, long X,
           std::int64_t budget_override) {
    const auto missing = profile.missing_exponents();
    if (l < 1 || l > static_cast<int>(missing.size()))
        throw std::invalid_argument("l out of range");
    mpz_class total = 1;
    for (int j = 0; j < l; ++j) {
        mpz_class b;
        mpz_ui_pow_ui(b.get_mpz_t(), X, missing[j]);
        b *= s;
        bounds_.push_back(b);
        total *= 2 * b + 1;
    }
    const std::int64_t budget =
        budget_override > 0 ? budget_override : budgets().hbox;
    if (total > budget) throw BudgetExceeded("h-box larger than budget");
}

mpz_class HBox::size() const {
    mpz_class total = 1;
    for (const auto& b : bounds_) total *= 2 * b + 1;
    return total;
}

Complex eval_Xi(const PhasePolynomial& phase, const ExponentProfile& profile,
                int l, const FixedReal& big_gamma, long s, long X) {
    const HBox box(profile, l, s, X);
    CompensatedSum acc;
    box.for_each([&](const std::vector<mpz_class>& h) {
        const auto delta = delta_coeffs(phase, profile, l, h);
        mpz_class yp;
        for (long y = 1; y <= X; ++y) {
            FixedReal ph = big_gamma.mul_int(y);
            mpz_class yz(y);
            for (size_t m = 0; m < delta.size(); ++m) {
                if (delta[m].is_zero()) continue;
                mpz_pow_ui(yp.get_mpz_t(), yz.get_mpz_t(), m);
                ph = ph + delta[m].mul_int(yp);
            }
            acc.add(unit_phase(-ph));
        }
    });
    return acc.value() / static_cast<double>(X);
}

double sup_partial_sum(const PhasePolynomial& phase, long X) {
    if (X < 1) throw std::invalid_argument("X must be >= 1");
    std::vector<Complex> prefix(X + 1, Complex(0.0, 0.0));
    CompensatedSum acc;
    for (long x = 1; x <= X; ++x) {
        acc.add(unit_phase(phase.phase_at(x)));
        prefix[x] = acc.value();
    }
    double best = 0.0;
    for (long a = 0; a < X; ++a)
        for (long b = a + 1; b <= X; ++b)
            best = std::max(best, std::abs(prefix[b] - prefix[a]));
    return best;
}

double eval_upsilon(const ExponentProfile& profile, int l,
                    const PhasePolynomial& phase, long s, long X,
                    const FixedReal& big_gamma) {
    const HBox box(profile, l, s, X);
    const int il = profile.missing_exponents()[l - 1];
    const long two_p =
        static_cast<long>(profile.k() - il) * (profile.k() - il + 1);
    double total = 0.0;
    box.for_each([&](const std::vector<mpz_class>& h) {
        auto delta = delta_coeffs(phase, profile, l, h);
        if (delta.size() > 1) delta[1] = delta[1] + big_gamma;
        PhasePolynomial dphase;
        for (size_t m = 1; m < delta.size(); ++m)
            if (!delta[m].is_zero())
                dphase.set(static_cast<int>(m), -delta[m]);
        total += std::pow(sup_partial_sum(dphase, X), two_p);
    });
    return total;
}

}  // namespace weylab
