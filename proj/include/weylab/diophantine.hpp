#pragma once

#include <optional>
#include <vector>

#include "weylab/expsum.hpp"
#include "weylab/fixedreal.hpp"
#include "weylab/kprofile.hpp"

namespace weylab {

struct RationalApprox {
    mpz_class a;
    mpz_class q;
    mpq_class err;  // |q*alpha - a|, exact
    double err_d() const { return err.get_d(); }
};

struct ArcVerdict {
    bool major = false;
    std::optional<RationalApprox> witness;
};

// Continued-fraction convergents a/q of alpha with q <= q_max, increasing q.
std::vector<RationalApprox> convergents(const FixedReal& alpha,
                                        const mpz_class& q_max);

// Dirichlet: minimal q <= Q with |q*alpha - a| <= 1/Q.
RationalApprox dirichlet_approx(const FixedReal& alpha, const mpz_class& Q);

// Membership in the major arcs with |q*alpha - a| <= (lk)^{-1} X^{-k+1},
// q <= X, decided via convergents.
ArcVerdict classify_arc(const FixedReal& alpha, long X, int k, int l);

// Same with the strict threshold |q*alpha - a| < X^{1-k} H^{-1}.
ArcVerdict classify_arc_H(const FixedReal& alpha, long X, int k, double H);

// Joint arcs: exists q <= X with |q*alpha_i - a_i| <= t^{-1} X^{-k_i+1} H^{-1}
// for every i, gcd(q, a_1, ..., a_t) = 1.
ArcVerdict classify_joint_arc(const std::vector<FixedReal>& alphas,
                              const ExponentProfile& profile, long X, double H);

// Exact count of |x| <= X with ||m*alpha*x + beta|| <= 1/Y, plus the
// explicit bound (1 + 4q/Y)(1 + 4mX/q) valid when |alpha - a/q| <= q^{-2}.
long baker_count(long m, const FixedReal& alpha, const FixedReal& beta, long X,
                 double Y);
double baker_bound(long m, const mpz_class& q, long X, double Y);

// Count over the h-box of ||delta'_n - theta_n|| <= 1/(4k X^n) for
// n = k-i_1, ..., k-i_l.  theta is indexed by j = 1..l.
mpz_class h_l_count(const ExponentProfile& profile, int l,
                    const PhasePolynomial& alphas,
                    const std::vector<FixedReal>& theta, long s, long X,
                    const FixedReal& big_gamma = FixedReal());

// M(H, gamma): #{h in [1,H] : ||h alpha - gamma|| < (4k)^{-1} X^{-k}}.
long m_h_gamma_count(const FixedReal& alpha, const FixedReal& gamma, double H,
                     long X, int k);

// N(H, gamma, alpha_1..alpha_t) with per-coordinate thresholds
// (4k)^{-1} X^{-k_j}.
long n_h_count(const std::vector<FixedReal>& alphas,
               const std::vector<FixedReal>& gammas, double H, long X,
               const ExponentProfile& profile);

// sup over gamma of n_h_count, gamma scanned over a uniform grid of
// grid_n points per coordinate plus the exact points (h alpha_1, ..,
// h alpha_t) for h in [1,H].
long n_h_sup(const std::vector<FixedReal>& alphas, double H, long X,
             const ExponentProfile& profile, long grid_n);

// lambda = r + X^k |r alpha - b|  (transference quantity)
double lambda_transfer(const FixedReal& alpha, const mpz_class& b,
                       const mpz_class& r, long X, int k);

// Psi weight: (q + X^k|q alpha - a|)^{-sigma} on the major arcs (l = 2),
// 0 on the minor arcs.
double psi_weight(const FixedReal& alpha, long X, int k, const mpq_class& sigma);

// A finite union of subintervals of [0,1), each tagged with its generator.
class ArcSet {
public:
    struct Interval {
        double lo;
        double hi;  // [lo, hi)
        long q = 0;
        long a = 0;
    };

    // Major arcs M_l(X, k): union over q <= X, 0 <= a <= q, gcd = 1 of
    // |q alpha - a| <= (lk)^{-1} X^{-k+1}.
    static ArcSet major_arcs(long X, int k, int l);
    static ArcSet full_circle();

    ArcSet complement() const;
    double measure() const;
    const std::vector<Interval>& intervals() const { return intervals_; }

    void add(Interval iv);
    void normalize();  // sort + merge overlaps, keeping the first generator

private:
    std::vector<Interval> intervals_;
};

}  // namespace weylab
