#include "weylab/fracsearch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "weylab/budget.hpp"

namespace weylab {

namespace {

bool all_zero(const std::vector<long>& v) {
    return std::all_of(v.begin(), v.end(), [](long x) { return x == 0; });
}

// Per-variable tables of exact phase values at x = 0..X.
std::vector<std::vector<mpz_class>> phase_tables(const PolySystem& sys,
                                                 int* bits_out) {
    int bits = FixedReal::kDefaultBits;
    for (const auto& p : sys.phis)
        if (!p.coeffs().empty()) bits = p.coeffs().begin()->second.bits();
    std::vector<std::vector<mpz_class>> tables(sys.phis.size());
    for (size_t i = 0; i < sys.phis.size(); ++i) {
        tables[i].resize(sys.X + 1);
        for (long x = 0; x <= sys.X; ++x)
            tables[i][x] = sys.phis[i].phase_at(x).raw();
    }
    *bits_out = bits;
    return tables;
}

mpz_class circ_norm_num(const mpz_class& v, const mpz_class& M) {
    mpz_class other = M - v;
    return v <= other ? v : other;
}

struct Best {
    bool has = false;
    mpz_class norm_num;
    std::vector<long> argmin;

    // Strictly better, or equal with lexicographically smaller argmin.
    bool improves(const mpz_class& n, const std::vector<long>& arg) const {
        if (!has) return true;
        if (n != norm_num) return n < norm_num;
        return arg < argmin;
    }
};

void check_box_budget(const PolySystem& sys, double dims) {
    if (sys.s() < 1 || sys.s() > 32)
        throw std::invalid_argument("need 1 <= s <= 32");
    if (sys.X < 1) throw std::invalid_argument("X must be >= 1");
    if (std::pow(static_cast<double>(sys.X + 1), dims) >
        static_cast<double>(budgets().box))
        throw BudgetExceeded("search box larger than budget");
}

}  // namespace

MinResult exhaustive_min(const PolySystem& sys) {
    check_box_budget(sys, static_cast<double>(sys.s()));
    int bits;
    const auto tables = phase_tables(sys, &bits);
    const mpz_class M = mpz_class(1) << bits;
    const long s = sys.s();

    Best best;
    std::vector<long> x(s, 0);
    mpz_class sum, n;
    while (true) {
        if (!all_zero(x)) {
            sum = 0;
            for (long i = 0; i < s; ++i) sum += tables[i][x[i]];
            mpz_fdiv_r_2exp(sum.get_mpz_t(), sum.get_mpz_t(), bits);
            n = circ_norm_num(sum, M);
            if (best.improves(n, x)) {
                best.has = true;
                best.norm_num = n;
                best.argmin = x;
            }
        }
        long j = s - 1;
        while (j >= 0 && x[j] == sys.X) x[j--] = 0;
        if (j < 0) break;
        ++x[j];
    }
    MinResult r;
    r.engine = MinEngine::exhaustive;
    r.value = mpq_class(best.norm_num, M);
    r.value.canonicalize();
    r.argmin = best.argmin;
    return r;
}

namespace {

struct HalfEntry {
    mpz_class v;
    std::vector<long> tuple;
};

std::vector<HalfEntry> enumerate_half(
    const std::vector<std::vector<mpz_class>>& tables, size_t lo, size_t hi,
    long X, int bits) {
    std::vector<HalfEntry> out;
    std::vector<long> x(hi - lo, 0);
    while (true) {
        mpz_class v = 0;
        for (size_t i = lo; i < hi; ++i) v += tables[i][x[i - lo]];
        mpz_fdiv_r_2exp(v.get_mpz_t(), v.get_mpz_t(), bits);
        out.push_back({v, x});
        size_t j = x.size();
        while (j > 0 && x[j - 1] == X) x[--j] = 0;
        if (j == 0) break;
        ++x[j - 1];
    }
    std::sort(out.begin(), out.end(), [](const HalfEntry& a, const HalfEntry& b) {
        if (a.v != b.v) return a.v < b.v;
        return a.tuple < b.tuple;
    });
    return out;
}

}  // namespace

MinResult mitm_min(const PolySystem& sys) {
    const long s = sys.s();
    check_box_budget(sys, std::ceil(static_cast<double>(s) / 2.0));
    int bits;
    const auto tables = phase_tables(sys, &bits);
    const mpz_class M = mpz_class(1) << bits;
    const size_t half = static_cast<size_t>((s + 1) / 2);

    const auto A = enumerate_half(tables, 0, half, sys.X, bits);
    const auto B = enumerate_half(tables, half, s, sys.X, bits);

    // Run starts of equal values in A (sorted secondarily by tuple, so a run
    // start is the lexicographically smallest tuple with that value).
    std::vector<size_t> run_start(A.size());
    std::vector<size_t> runs;  // indices of run starts
    for (size_t i = 0; i < A.size(); ++i) {
        if (i == 0 || A[i].v != A[i - 1].v) runs.push_back(i);
        run_start[i] = runs.back();
    }

    Best best;
    std::vector<long> arg(s);
    auto consider = [&](size_t ai, const HalfEntry& b) {
        const HalfEntry& a = A[ai];
        if (all_zero(a.tuple) && all_zero(b.tuple)) return;
        mpz_class sum = a.v + b.v;
        mpz_fdiv_r_2exp(sum.get_mpz_t(), sum.get_mpz_t(), bits);
        mpz_class n = circ_norm_num(sum, M);
        std::copy(a.tuple.begin(), a.tuple.end(), arg.begin());
        std::copy(b.tuple.begin(), b.tuple.end(), arg.begin() + half);
        if (best.improves(n, arg)) {
            best.has = true;
            best.norm_num = n;
            best.argmin = arg;
        }
    };

    const long nruns = static_cast<long>(runs.size());
    for (const auto& b : B) {
        mpz_class target = M - b.v;
        mpz_fdiv_r_2exp(target.get_mpz_t(), target.get_mpz_t(), bits);
        // First run with value >= target.
        long r0 = static_cast<long>(
            std::lower_bound(runs.begin(), runs.end(), target,
                             [&](size_t ri, const mpz_class& t) {
                                 return A[ri].v < t;
                             }) -
            runs.begin());
        const bool b_zero = all_zero(b.tuple);
        for (long off = -2; off <= 2; ++off) {
            long r = ((r0 + off) % nruns + nruns) % nruns;
            size_t ai = runs[r];
            if (b_zero && all_zero(A[ai].tuple)) {
                // Skip the forbidden all-zero pair; the next entry in the
                // run (if any) has the same value.
                if (ai + 1 < A.size() && A[ai + 1].v == A[ai].v)
                    ++ai;
                else
                    continue;
            }
            consider(ai, b);
        }
    }

    MinResult r;
    r.engine = MinEngine::mitm;
    r.value = mpq_class(best.norm_num, M);
    r.value.canonicalize();
    r.argmin = best.argmin;
    return r;
}

BoundReport bound_check(const PolySystem& sys, const ExponentProfile& profile,
                        const MinResult& result, TheoremGate theorem,
                        double epsilon) {
    BoundReport rep;
    rep.value = result.value_d();
    const long s = sys.s();
    const long k = profile.k();
    mpq_class sigma_target(1);
    switch (theorem) {
        case TheoremGate::T11:
            if (profile.t() != 1) { rep.reason = "profile is not a single exponent"; return rep; }
            if (k < 6) { rep.reason = "requires k >= 6"; return rep; }
            if (s < k * (k + 1) / 2) { rep.reason = "requires s >= k(k+1)/2"; return rep; }
            break;
        case TheoremGate::T12: {
            if (profile.t() < 2) { rep.reason = "requires t >= 2"; return rep; }
            if (k < 6) { rep.reason = "requires k1 >= 6"; return rep; }
            const auto th = thresholds(profile);
            if (s <= th.s_thm12) { rep.reason = "requires s > 2L"; return rep; }
            break;
        }
        case TheoremGate::T41:
            if (profile.t() != 1) { rep.reason = "profile is not a single exponent"; return rep; }
            if (k < 6) { rep.reason = "requires k >= 6"; return rep; }
            if (s < k + 2) { rep.reason = "requires s >= k+2"; return rep; }
            sigma_target = sigma_sk(s, k);
            break;
    }
    rep.applicable = true;
    rep.target = std::pow(static_cast<double>(sys.X),
                          -sigma_target.get_d() + epsilon);
    rep.pass = rep.value <= rep.target;
    return rep;
}

HPartition h_partition(const std::vector<FixedReal>& alpha1s, long H, long X,
                       int k) {
    if (alpha1s.size() > 32)
        throw std::invalid_argument("at most 32 coefficients");
    if (H > budgets().box) throw BudgetExceeded("H larger than budget");
    HPartition part;
    for (long h = 1; h <= H; ++h) {
        std::uint32_t mask = 0;
        for (size_t j = 0; j < alpha1s.size(); ++j)
            if (classify_arc(alpha1s[j].mul_int(h), X, k, 2).major)
                mask |= (1u << j);
        part.classes[mask].push_back(h);
    }
    return part;
}

Lemma42Report lemma42_sum(const std::vector<FixedReal>& xs, double H) {
    if (H < 1) throw std::invalid_argument("H must be >= 1");
    Lemma42Report rep;
    mpq_class inv_h = mpq_class(1) / mpq_class(H);
    inv_h.canonicalize();
    rep.hypothesis_ok = true;
    for (const auto& x : xs)
        if (x.norm_exact() < inv_h) rep.hypothesis_ok = false;
    rep.sum = 0.0;
    for (long h = 1; h <= static_cast<long>(H); ++h) {
        CompensatedSum inner;
        for (const auto& x : xs) inner.add(unit_phase(x.mul_int(h)));
        rep.sum += std::abs(inner.value());
    }
    rep.ratio = xs.empty() ? 0.0 : rep.sum / static_cast<double>(xs.size());
    return rep;
}

WeylScanReport weyl_large_value_scan(const std::vector<FixedReal>& alphas,
                                     const ExponentProfile& profile, long H,
                                     long X) {
    if (H * X > budgets().box) throw BudgetExceeded("H*X larger than budget");
    WeylScanReport rep;
    const double Hd = static_cast<double>(H);
    if (profile.t() == 1)
        rep.gate_ok = !classify_arc_H(alphas.at(0), X, profile.k(), Hd).major;
    else
        rep.gate_ok = !classify_joint_arc(alphas, profile, X, Hd).major;
    for (long h = 1; h <= H; ++h) {
        PhasePolynomial phase;
        for (int j = 0; j < profile.t(); ++j) {
            FixedReal c = alphas.at(j).mul_int(h);
            if (!c.is_zero()) phase.set(profile.exps()[j], c);
        }
        rep.normalized_max =
            std::max(rep.normalized_max,
                     std::abs(eval_sum(phase, X)) / static_cast<double>(X));
    }
    return rep;
}

ExponentFit exponent_fit(const std::vector<std::pair<long, double>>& runs) {
    ExponentFit fit;
    std::vector<std::pair<double, double>> usable;
    for (const auto& [X, v] : runs) {
        if (v > 0)
            usable.emplace_back(static_cast<double>(X), v);
        else
            fit.excluded.push_back(X);
    }
    if (usable.size() < 3)
        throw std::invalid_argument("exponent_fit needs >= 3 positive points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(usable.size());
    for (const auto& [X, v] : usable) {
        const double lx = std::log(X), ly = std::log(v);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    fit.sigma_emp = -slope;
    fit.max_residual = 0.0;
    for (const auto& [X, v] : usable)
        fit.max_residual =
            std::max(fit.max_residual,
                     std::abs(std::log(v) - (intercept + slope * std::log(X))));
    return fit;
}

}  // namespace weylab
