#include "weylab/kprofile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace weylab {

namespace {

mpz_class ceil_q(const mpq_class& q) {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

}  // namespace

ExponentProfile::ExponentProfile(std::vector<int> exps) : exps_(std::move(exps)) {
    if (exps_.empty()) throw std::invalid_argument("empty exponent profile");
    for (size_t i = 0; i < exps_.size(); ++i) {
        if (exps_[i] < 1) throw std::invalid_argument("exponents must be positive");
        if (i > 0 && exps_[i] >= exps_[i - 1])
            throw std::invalid_argument("exponents must be strictly decreasing");
    }
    if (t() >= k())
        throw std::invalid_argument("profile requires t < k1");
}

int ExponentProfile::degree_sum() const {
    int d = 0;
    for (int e : exps_) d += e;
    return d;
}

bool ExponentProfile::contains(int e) const {
    return std::find(exps_.begin(), exps_.end(), e) != exps_.end();
}

std::vector<int> ExponentProfile::missing_exponents() const {
    std::vector<int> out;
    for (int e = k(); e >= 1; --e)
        if (!contains(e)) out.push_back(e);
    return out;
}

SigmaResult sigma_exponent(const ExponentProfile& profile) {
    const auto missing = profile.missing_exponents();
    const long k = profile.k();
    SigmaResult best{mpq_class(0), 0};
    for (int l = 1; l <= static_cast<int>(missing.size()); ++l) {
        const long il = missing[l - 1];
        mpq_class cand(l, (k - il) * (k - il + 1));
        cand.canonicalize();
        if (cand > best.sigma) {
            best.sigma = cand;
            best.l = l;
        }
    }
    return best;
}

ThresholdReport thresholds(const ExponentProfile& profile) {
    ThresholdReport r;
    const auto sig = sigma_exponent(profile);
    const long k = profile.k();
    r.sigma = sig.sigma;
    r.sigma_l = sig.l;
    r.D = profile.degree_sum();
    r.L = (k * k + k) / 2 + ceil_q(r.sigma * (1 - k)).get_si();
    r.s_thm11 = ceil_q(mpq_class(k * (k + 1), 2)).get_si();
    r.s_thm12 = 2 * r.L;
    mpq_class major_rhs = (mpq_class(k * k) + (1 - 2 * r.sigma) * k + 2 * r.sigma) / 2;
    r.s_mv_major = ceil_q(major_rhs).get_si();
    r.s_mv_minor = k * (k + 1) / 2;
    return r;
}

mpq_class sigma_sk(long s, long k) {
    if (k < 2 || s < k + 2)
        throw std::invalid_argument("sigma_sk requires k >= 2 and s >= k+2");
    const long den = k * (k + 1) - s;
    if (den <= 0) return mpq_class(1);
    mpq_class val(s, den);
    val.canonicalize();
    return std::min(val, mpq_class(1));
}

RlResult r_l_factor(const ExponentProfile& profile, int l, long q, long X) {
    const auto missing = profile.missing_exponents();
    if (l < 1 || l > static_cast<int>(missing.size()))
        throw std::invalid_argument("l out of range");
    if (q < 1 || X < 1) throw std::invalid_argument("q and X must be positive");
    const long k = profile.k();
    double prod = 1.0;
    for (int j = 1; j <= l; ++j) {
        const long ij = missing[j - 1];
        prod *= 1.0 / q + std::pow(X, -static_cast<double>(ij)) +
                std::pow(X, -static_cast<double>(k - ij)) +
                q * std::pow(X, -static_cast<double>(k));
    }
    const long il = missing[l - 1];
    RlResult r;
    r.two_p = (k - il) * (k - il + 1);
    r.r_l = prod;
    r.r_l_root = std::pow(prod, 1.0 / static_cast<double>(r.two_p));
    return r;
}

PhiResult phi_exponent(long s, long k, long m, const mpq_class& sigma,
                       const mpq_class& nu) {
    if (m < 0 || m > s) throw std::invalid_argument("need 0 <= m <= s");
    PhiResult r;
    r.m1 = std::min(k * (k + 1 - m), s - m);
    const mpq_class kk1(k * (k + 1));
    const mpq_class weight = 1 - mpq_class(k * m + r.m1) / kk1;
    r.phi = s + weight * (sigma - nu) - mpq_class(r.m1) / kk1;
    r.phi_nu_free = s + weight * sigma - mpq_class(r.m1) / kk1;
    r.phi.canonicalize();
    r.phi_nu_free.canonicalize();
    r.within_s = r.phi <= s;
    return r;
}

}  // namespace weylab
