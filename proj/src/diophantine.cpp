#include "weylab/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "weylab/budget.hpp"

namespace weylab {

namespace {

mpq_class abs_err(const FixedReal& alpha, const mpz_class& q, const mpz_class& a) {
    // |q*alpha - a| = |q*p - a*2^F| / 2^F
    mpz_class num = q * alpha.raw() - a * alpha.modulus();
    mpq_class e(abs(num), alpha.modulus());
    e.canonicalize();
    return e;
}

mpz_class nearest_int(const mpz_class& num, const mpz_class& den) {
    // round(num/den), den > 0
    mpz_class r;
    mpz_class shifted = 2 * num + den;
    mpz_fdiv_q(r.get_mpz_t(), shifted.get_mpz_t(), mpz_class(2 * den).get_mpz_t());
    return r;
}

mpq_class power_threshold(long num, long c, long X, long e) {
    // num / (c * X^e)
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), X, e);
    den *= c;
    mpq_class t(num, den);
    t.canonicalize();
    return t;
}

}  // namespace

std::vector<RationalApprox> convergents(const FixedReal& alpha,
                                        const mpz_class& q_max) {
    std::vector<RationalApprox> out;
    mpz_class num = alpha.raw(), den = alpha.modulus();
    mpz_class h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
    while (den != 0) {
        mpz_class a, rem;
        mpz_fdiv_qr(a.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(),
                    den.get_mpz_t());
        mpz_class h = a * h_prev + h_prev2;
        mpz_class k = a * k_prev + k_prev2;
        if (k > q_max) break;
        out.push_back({h, k, abs_err(alpha, k, h)});
        h_prev2 = h_prev; h_prev = h;
        k_prev2 = k_prev; k_prev = k;
        num = den;
        den = rem;
    }
    return out;
}

RationalApprox dirichlet_approx(const FixedReal& alpha, const mpz_class& Q) {
    if (Q < 1) throw std::invalid_argument("Q must be >= 1");
    mpq_class thr(1, Q);
    thr.canonicalize();
    for (const auto& c : convergents(alpha, Q))
        if (c.err <= thr) return c;
    // Unreachable: the last convergent with q <= Q always qualifies.
    throw std::logic_error("Dirichlet approximation not found");
}

namespace {

ArcVerdict classify_by_convergents(const FixedReal& alpha, long X,
                                   const mpq_class& thr, bool strict) {
    ArcVerdict v;
    for (const auto& c : convergents(alpha, X)) {
        const bool ok = strict ? (c.err < thr) : (c.err <= thr);
        if (ok) {
            v.major = true;
            v.witness = c;
            return v;
        }
    }
    return v;
}

}  // namespace

ArcVerdict classify_arc(const FixedReal& alpha, long X, int k, int l) {
    if (k < 2 || l < 1) throw std::invalid_argument("need k >= 2, l >= 1");
    return classify_by_convergents(
        alpha, X, power_threshold(1, static_cast<long>(l) * k, X, k - 1),
        /*strict=*/false);
}

ArcVerdict classify_arc_H(const FixedReal& alpha, long X, int k, double H) {
    if (H <= 0) throw std::invalid_argument("H must be positive");
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), X, k - 1);
    mpq_class thr = mpq_class(1) / (mpq_class(H) * mpq_class(den));
    thr.canonicalize();
    return classify_by_convergents(alpha, X, thr, /*strict=*/true);
}

ArcVerdict classify_joint_arc(const std::vector<FixedReal>& alphas,
                              const ExponentProfile& profile, long X,
                              double H) {
    const int t = profile.t();
    if (static_cast<int>(alphas.size()) != t)
        throw std::invalid_argument("need one alpha per exponent");
    std::vector<mpq_class> thr(t);
    for (int i = 0; i < t; ++i) {
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), X, profile.exps()[i] - 1);
        thr[i] = mpq_class(1) / (mpq_class(t) * mpq_class(H) * mpq_class(den));
        thr[i].canonicalize();
    }
    ArcVerdict v;
    for (long q = 1; q <= X; ++q) {
        bool ok = true;
        std::vector<mpz_class> as(t);
        for (int i = 0; i < t && ok; ++i) {
            mpz_class qp = q * alphas[i].raw();
            as[i] = nearest_int(qp, alphas[i].modulus());
            if (abs_err(alphas[i], q, as[i]) > thr[i]) ok = false;
        }
        if (!ok) continue;
        mpz_class g(q);
        for (const auto& a : as) g = gcd(g, a);
        // A witness with gcd > 1 reduces to a coprime one at q/g.
        v.major = true;
        v.witness = RationalApprox{as[0] / g, mpz_class(q) / g,
                                   abs_err(alphas[0], mpz_class(q) / g, as[0] / g)};
        return v;
    }
    return v;
}

long baker_count(long m, const FixedReal& alpha, const FixedReal& beta, long X,
                 double Y) {
    if (Y <= 0) throw std::invalid_argument("Y must be positive");
    mpq_class thr = mpq_class(1) / mpq_class(Y);
    thr.canonicalize();
    long count = 0;
    for (long x = -X; x <= X; ++x) {
        FixedReal v = alpha.mul_int(mpz_class(m) * x) + beta;
        if (v.norm_exact() <= thr) ++count;
    }
    return count;
}

double baker_bound(long m, const mpz_class& q, long X, double Y) {
    const double qd = q.get_d();
    return (1.0 + 4.0 * qd / Y) * (1.0 + 4.0 * static_cast<double>(m) * X / qd);
}

mpz_class h_l_count(const ExponentProfile& profile, int l,
                    const PhasePolynomial& alphas,
                    const std::vector<FixedReal>& theta, long s, long X,
                    const FixedReal& big_gamma) {
    if (theta.size() != static_cast<size_t>(l))
        throw std::invalid_argument("theta must have l entries");
    const auto missing = profile.missing_exponents();
    const int k = profile.k();
    std::vector<mpq_class> thr(l);
    for (int j = 0; j < l; ++j)
        thr[j] = power_threshold(1, 4L * k, X, k - missing[j]);
    const HBox box(profile, l, s, X);
    mpz_class count = 0;
    box.for_each([&](const std::vector<mpz_class>& h) {
        auto delta = delta_coeffs(alphas, profile, l, h);
        if (delta.size() > 1) delta[1] = delta[1] + big_gamma;
        for (int j = 0; j < l; ++j) {
            const int n = k - missing[j];
            if ((delta[n] - theta[j]).norm_exact() > thr[j]) return;
        }
        ++count;
    });
    return count;
}

long m_h_gamma_count(const FixedReal& alpha, const FixedReal& gamma, double H,
                     long X, int k) {
    const mpq_class thr = power_threshold(1, 4L * k, X, k);
    long count = 0;
    for (long h = 1; h <= static_cast<long>(H); ++h)
        if ((alpha.mul_int(h) - gamma).norm_exact() < thr) ++count;
    return count;
}

long n_h_count(const std::vector<FixedReal>& alphas,
               const std::vector<FixedReal>& gammas, double H, long X,
               const ExponentProfile& profile) {
    const int t = profile.t();
    if (static_cast<int>(alphas.size()) != t ||
        static_cast<int>(gammas.size()) != t)
        throw std::invalid_argument("need one alpha and gamma per exponent");
    const int k = profile.k();
    std::vector<mpq_class> thr(t);
    for (int j = 0; j < t; ++j)
        thr[j] = power_threshold(1, 4L * k, X, profile.exps()[j]);
    long count = 0;
    for (long h = 1; h <= static_cast<long>(H); ++h) {
        bool ok = true;
        for (int j = 0; j < t && ok; ++j)
            if ((alphas[j].mul_int(h) - gammas[j]).norm_exact() >= thr[j])
                ok = false;
        if (ok) ++count;
    }
    return count;
}

namespace {

// Depth-first grid scan with per-coordinate pruning of surviving h's.
long grid_scan(const std::vector<FixedReal>& alphas,
               const std::vector<mpq_class>& thr, long grid_n, size_t j,
               const std::vector<long>& hs, int bits) {
    if (hs.empty()) return 0;
    if (j == alphas.size()) return static_cast<long>(hs.size());
    long best = 0;
    for (long g = 0; g < grid_n; ++g) {
        const FixedReal gamma =
            FixedReal::from_rational(g, grid_n, bits);
        std::vector<long> next;
        for (long h : hs)
            if ((alphas[j].mul_int(h) - gamma).norm_exact() < thr[j])
                next.push_back(h);
        if (!next.empty())
            best = std::max(best,
                            grid_scan(alphas, thr, grid_n, j + 1, next, bits));
    }
    return best;
}

}  // namespace

long n_h_sup(const std::vector<FixedReal>& alphas, double H, long X,
             const ExponentProfile& profile, long grid_n) {
    const int t = profile.t();
    const int k = profile.k();
    std::vector<mpq_class> thr(t);
    for (int j = 0; j < t; ++j)
        thr[j] = power_threshold(1, 4L * k, X, profile.exps()[j]);

    long best = 0;
    // Exact candidate points gamma = (h alpha_1, ..., h alpha_t).
    for (long h0 = 1; h0 <= static_cast<long>(H); ++h0) {
        std::vector<FixedReal> gamma(t);
        for (int j = 0; j < t; ++j) gamma[j] = alphas[j].mul_int(h0);
        best = std::max(best, n_h_count(alphas, gamma, H, X, profile));
    }
    // Uniform grid candidates.
    std::vector<long> all_h;
    for (long h = 1; h <= static_cast<long>(H); ++h) all_h.push_back(h);
    const int bits = alphas.empty() ? FixedReal::kDefaultBits : alphas[0].bits();
    best = std::max(best, grid_scan(alphas, thr, grid_n, 0, all_h, bits));
    return best;
}

double lambda_transfer(const FixedReal& alpha, const mpz_class& b,
                       const mpz_class& r, long X, int k) {
    if (r < 1) throw std::invalid_argument("r must be positive");
    if (gcd(b, r) != 1) throw std::invalid_argument("need gcd(b, r) = 1");
    mpz_class Xk;
    mpz_ui_pow_ui(Xk.get_mpz_t(), X, k);
    mpq_class lam = mpq_class(r) + mpq_class(Xk) * abs_err(alpha, r, b);
    return lam.get_d();
}

double psi_weight(const FixedReal& alpha, long X, int k,
                  const mpq_class& sigma) {
    const ArcVerdict v = classify_arc(alpha, X, k, 2);
    if (!v.major) return 0.0;
    mpz_class Xk;
    mpz_ui_pow_ui(Xk.get_mpz_t(), X, k);
    mpq_class base = mpq_class(v.witness->q) + mpq_class(Xk) * v.witness->err;
    return std::pow(base.get_d(), -sigma.get_d());
}

ArcSet ArcSet::major_arcs(long X, int k, int l) {
    ArcSet set;
    const double delta = 1.0 / (static_cast<double>(l) * k *
                                std::pow(static_cast<double>(X), k - 1));
    for (long q = 1; q <= X; ++q) {
        for (long a = 0; a <= q; ++a) {
            if (std::gcd(q, a) != 1) continue;  // gcd(1, 0) = 1 keeps a = 0
            const double center = static_cast<double>(a) / q;
            const double half = delta / q;
            set.add({center - half, center + half, q, a});
        }
    }
    set.normalize();
    return set;
}

ArcSet ArcSet::full_circle() {
    ArcSet set;
    set.add({0.0, 1.0, 0, 0});
    return set;
}

void ArcSet::add(Interval iv) {
    iv.lo = std::max(iv.lo, 0.0);
    iv.hi = std::min(iv.hi, 1.0);
    if (iv.hi > iv.lo) intervals_.push_back(iv);
}

void ArcSet::normalize() {
    std::sort(intervals_.begin(), intervals_.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> merged;
    for (const auto& iv : intervals_) {
        if (!merged.empty() && iv.lo <= merged.back().hi)
            merged.back().hi = std::max(merged.back().hi, iv.hi);
        else
            merged.push_back(iv);
    }
    intervals_ = std::move(merged);
}

ArcSet ArcSet::complement() const {
    ArcSet out;
    double cursor = 0.0;
    for (const auto& iv : intervals_) {
        if (iv.lo > cursor) out.add({cursor, iv.lo, 0, 0});
        cursor = std::max(cursor, iv.hi);
    }
    if (cursor < 1.0) out.add({cursor, 1.0, 0, 0});
    return out;
}

double ArcSet::measure() const {
    double m = 0.0;
    for (const auto& iv : intervals_) m += iv.hi - iv.lo;
    return m;
}

}  // namespace weylab
