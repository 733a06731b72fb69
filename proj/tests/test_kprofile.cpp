#include <doctest.h>

#include "weylab/kprofile.hpp"
#include "weylab/rng.hpp"

using namespace weylab;

TEST_SUITE_BEGIN("kprofile");

TEST_CASE("missing exponents") {
    CHECK(ExponentProfile({10, 9, 8}).missing_exponents() ==
          std::vector<int>{7, 6, 5, 4, 3, 2, 1});
    CHECK(ExponentProfile({3, 1}).missing_exponents() == std::vector<int>{2});
    CHECK(ExponentProfile({5, 4, 2, 1}).missing_exponents() ==
          std::vector<int>{3});
}

TEST_CASE("profile validation") {
    CHECK_THROWS_AS(ExponentProfile({}), std::invalid_argument);
    CHECK_THROWS_AS(ExponentProfile({3, 3}), std::invalid_argument);
    CHECK_THROWS_AS(ExponentProfile({1, 3}), std::invalid_argument);
    CHECK_THROWS_AS(ExponentProfile({3, 2, 1}), std::invalid_argument);  // t = k1
    CHECK_THROWS_AS(ExponentProfile({2, 0}), std::invalid_argument);
}

TEST_CASE("saving exponent") {
    auto s1 = sigma_exponent(ExponentProfile({10, 9, 8}));
    CHECK(s1.sigma == mpq_class(1, 10));
    CHECK(s1.l == 2);
    auto s2 = sigma_exponent(ExponentProfile({3, 1}));
    CHECK(s2.sigma == mpq_class(1, 2));
    CHECK(s2.l == 1);
    auto s3 = sigma_exponent(ExponentProfile({6}));
    CHECK(s3.sigma == mpq_class(1, 2));
    CHECK(s3.l == 1);
}

TEST_CASE("thresholds") {
    CHECK(thresholds(ExponentProfile({6})).s_thm11 == 21);
    auto th = thresholds(ExponentProfile({3, 1}));
    CHECK(th.sigma == mpq_class(1, 2));
    CHECK(th.L == 5);
    CHECK(th.s_thm12 == 10);
    CHECK(thresholds(ExponentProfile({5, 4, 2, 1})).D == 12);
}

TEST_CASE("sigma(s,k)") {
    CHECK(sigma_sk(14, 6) == mpq_class(1, 2));
    CHECK(sigma_sk(21, 6) == 1);
    CHECK(sigma_sk(8, 6) == mpq_class(4, 17));
    CHECK(sigma_sk(50, 6) == 1);  // denominator would be <= 0
    CHECK_THROWS_AS(sigma_sk(7, 6), std::invalid_argument);
}

TEST_CASE("R_l factor") {
    const ExponentProfile p({3, 1});
    auto a = r_l_factor(p, 1, 1, 10);
    CHECK(a.r_l == doctest::Approx(1.111).epsilon(1e-9));
    CHECK(a.two_p == 2);
    auto b = r_l_factor(p, 1, 10, 10);
    CHECK(b.r_l == doctest::Approx(0.22).epsilon(1e-9));
    CHECK_THROWS_AS(r_l_factor(p, 2, 1, 10), std::invalid_argument);
}

TEST_CASE("phi exponent bookkeeping") {
    auto a = phi_exponent(12, 3, 0, 1, 0);
    CHECK(a.m1 == 12);
    CHECK(a.phi == 11);
    CHECK(a.within_s);
    // m = s: m1 = min{k(k+1-m), 0} and the -m1/(k(k+1)) term dominates.
    auto b = phi_exponent(10, 4, 10, mpq_class(1, 2), 0);
    CHECK(b.m1 == -20);
    CHECK(b.phi == 11);
    // s = k(k+1)/2, m = 0, sigma = 1: phi <= s
    for (long k = 2; k <= 8; ++k) {
        auto c = phi_exponent(k * (k + 1) / 2, k, 0, 1, 0);
        CHECK(c.within_s);
    }
    CHECK_THROWS_AS(phi_exponent(4, 3, 5, 1, 0), std::invalid_argument);
}

TEST_CASE("sigma agrees with a direct loop on random profiles") {
    CounterRng rng(1001);
    for (int trial = 0; trial < 500; ++trial) {
        const int k = 2 + static_cast<int>(rng.next_below(19));
        std::vector<int> exps{k};
        for (int e = k - 1; e >= 1; --e)
            if (rng.next_below(2) == 0) exps.push_back(e);
        if (static_cast<int>(exps.size()) == k) exps.pop_back();
        const ExponentProfile p(exps);
        const auto missing = p.missing_exponents();
        mpq_class best(0);
        int best_l = 0;
        for (int l = 1; l <= static_cast<int>(missing.size()); ++l) {
            mpq_class cand(l, (k - missing[l - 1]) * (k - missing[l - 1] + 1));
            cand.canonicalize();
            if (cand > best) {
                best = cand;
                best_l = l;
            }
        }
        const auto got = sigma_exponent(p);
        CHECK(got.sigma == best);
        CHECK(got.l == best_l);
        CHECK(got.sigma > 0);
        CHECK(got.sigma <= mpq_class(1, 2));
    }
}

TEST_CASE("consecutive-block profiles respect the t/((2t-1)2t) lower bound") {
    for (int k = 3; k <= 20; ++k) {
        for (int t = 1; 2 * t < k; ++t) {
            std::vector<int> exps;
            for (int e = k; e > k - t; --e) exps.push_back(e);
            const auto sig = sigma_exponent(ExponentProfile(exps));
            CHECK(sig.sigma >= mpq_class(t, (2 * t - 1) * 2 * t));
        }
    }
}

TEST_CASE("split profiles respect the m1/((2m1-1)2m1) lower bound") {
    for (int k = 5; k <= 20; ++k) {
        for (int m1 = 1; m1 < k; ++m1) {
            for (int m2 = 1; 2 * (m1 + m2) < k; ++m2) {
                std::vector<int> exps;
                for (int e = k; e > k - m1; --e) exps.push_back(e);
                for (int e = m2; e >= 1; --e) exps.push_back(e);
                const auto sig = sigma_exponent(ExponentProfile(exps));
                CHECK(sig.sigma >= mpq_class(m1, (2 * m1 - 1) * 2 * m1));
            }
        }
    }
}

TEST_CASE("top-two-consecutive profiles follow the max formula") {
    // For (6,5,1) the direct formula gives 1/6 (attained at l=1), not 1/2;
    // see the README note on this documented discrepancy.
    const auto sig = sigma_exponent(ExponentProfile({6, 5, 1}));
    CHECK(sig.sigma == mpq_class(1, 6));
    CHECK(sig.l == 1);
}

TEST_CASE("2L(1+sigma) >= k1(k1+1) for random profiles") {
    CounterRng rng(1002);
    for (int trial = 0; trial < 200; ++trial) {
        const int k = 2 + static_cast<int>(rng.next_below(15));
        std::vector<int> exps{k};
        for (int e = k - 1; e >= 1; --e)
            if (rng.next_below(2) == 0) exps.push_back(e);
        if (static_cast<int>(exps.size()) == k) exps.pop_back();
        const auto th = thresholds(ExponentProfile(exps));
        CHECK(mpq_class(2 * th.L) * (1 + th.sigma) >= k * (k + 1));
    }
}

TEST_SUITE_END();
