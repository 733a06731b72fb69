#include <doctest.h>

#include <cmath>
#include <numbers>

#include "weylab/budget.hpp"
#include "weylab/meanvalue.hpp"
#include "weylab/rng.hpp"

using namespace weylab;

TEST_SUITE_BEGIN("meanvalue");

TEST_CASE("diagonal-only counts") {
    CHECK(vinogradov_count(1, 3, 17).count == 17);
    CHECK(profile_count(ExponentProfile({5}), 1, 23).count == 23);
}

TEST_CASE("classical identity 2X^2 - X") {
    for (long X : {5L, 10L, 20L, 30L}) {
        const mpz_class expected = 2 * X * X - X;
        CHECK(vinogradov_count(2, 2, X, CountBackend::hashed).count == expected);
        CHECK(vinogradov_count(2, 2, X, CountBackend::brute).count == expected);
    }
}

TEST_CASE("backend equivalence on random instances") {
    CounterRng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const long s = 1 + static_cast<long>(rng.next_below(3));
        const long X = 2 + static_cast<long>(rng.next_below(6));
        const long k = 1 + static_cast<long>(rng.next_below(3));
        CHECK(vinogradov_count(s, k, X, CountBackend::hashed).count ==
              vinogradov_count(s, k, X, CountBackend::brute).count);
    }
    CHECK(profile_count(ExponentProfile({3, 1}), 2, 6, CountBackend::hashed)
              .count ==
          profile_count(ExponentProfile({3, 1}), 2, 6, CountBackend::brute)
              .count);
}

TEST_CASE("solution distributions") {
    const auto d1 = solution_distribution(ExponentProfile({3, 1}), 1, 2);
    REQUIRE(d1.counts.size() == 1);
    CHECK(d1.counts.at(0) == 2);

    const auto d2 = solution_distribution(ExponentProfile({2}), 1, 2);
    CHECK(d2.counts.at(0) == 2);
    CHECK(d2.counts.at(3) == 1);
    CHECK(d2.counts.at(-3) == 1);

    // Total mass equals the subsystem count; symmetry c_d = c_{-d}.
    const auto d3 = solution_distribution(ExponentProfile({3, 1}), 2, 5);
    CHECK(d3.total() == vinogradov_count(2, 1, 5).count);
    for (const auto& [d, c] : d3.counts) CHECK(d3.counts.at(-d) == c);
}

TEST_CASE("restricted mean value") {
    const auto dist = solution_distribution(ExponentProfile({3, 1}), 1, 2);
    CounterRng rng(32);
    for (int trial = 0; trial < 20; ++trial)
        CHECK(restricted_meanvalue(dist, rng.next_fixed()) ==
              doctest::Approx(2.0).epsilon(1e-12));

    const auto big = solution_distribution(ExponentProfile({3, 1}), 2, 6);
    CHECK(restricted_meanvalue(big, FixedReal()) ==
          doctest::Approx(big.total().get_d()).epsilon(1e-12));
    for (int trial = 0; trial < 1000; ++trial)
        CHECK(restricted_meanvalue(big, rng.next_fixed()) >= -1e-9);
}

TEST_CASE("closed-form arc integrals") {
    ArcSet half;
    half.add({0.0, 0.5, 0, 0});
    half.normalize();
    CHECK(arc_integral(0, half).real() == doctest::Approx(0.5));
    CHECK(std::abs(arc_integral(1, half)) ==
          doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-12));
    CHECK(std::abs(arc_integral(5, ArcSet::full_circle())) < 1e-12);
}

TEST_CASE("arc mean values add up") {
    const ExponentProfile profile({2});
    const auto dist = solution_distribution(profile, 2, 6);
    const auto major = ArcSet::major_arcs(6, 2, 2);
    const auto minor = major.complement();
    const double total = profile_count(profile, 2, 6).count.get_d();
    CHECK(arc_meanvalue(dist, ArcSet::full_circle()) ==
          doctest::Approx(total).epsilon(1e-9));
    CHECK(arc_meanvalue(dist, major) + arc_meanvalue(dist, minor) ==
          doctest::Approx(total).epsilon(1e-6));
}

TEST_CASE("slope fitting") {
    std::vector<std::pair<double, double>> cubic, flat, j22;
    for (double X : {5.0, 10.0, 20.0, 30.0}) {
        cubic.emplace_back(X, X * X * X);
        flat.emplace_back(X, 7.5);
        j22.emplace_back(X, 2 * X * X - X);
    }
    CHECK(slope_fit(cubic).slope == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(slope_fit(flat).slope == doctest::Approx(0.0).epsilon(1e-9));
    // d log(2X^2 - X)/d log X = (4X-1)/(2X-1), slightly above 2 at small X.
    const double s = slope_fit(j22).slope;
    CHECK(s >= 1.9);
    CHECK(s <= 2.1);
    CHECK_THROWS_AS(slope_fit({{1.0, 1.0}, {2.0, 2.0}}), std::invalid_argument);
}

TEST_CASE("budget guard on enumeration") {
    CHECK_THROWS_AS(vinogradov_count(12, 2, 1000), BudgetExceeded);
}

TEST_SUITE_END();
