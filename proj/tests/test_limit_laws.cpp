#include <doctest.h>

#include <cmath>

#include "limit_laws.hpp"
#include "oracles.hpp"

using namespace lgp;

TEST_CASE("theta_c at symmetric parameters") {
    CHECK(solve_theta_c(2.0, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(solve_theta_c(1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("theta_c against plain bisection, residual contract") {
    for (auto [theta, p] : {std::pair{2.0, 2.0}, std::pair{0.5, 5.0}, std::pair{4.0, 1.5}}) {
        double tc = solve_theta_c(theta, p);
        CHECK(tc > 0.0);
        CHECK(tc < theta);
        CHECK(tc == doctest::Approx(oracle::theta_c_bisect(theta, p)).epsilon(1e-12));
        double resid = std::abs(trigamma(tc) - p * trigamma(theta - tc));
        CHECK(resid <= 1e-12 * trigamma(tc));
    }
}

TEST_CASE("phase constants at theta=2, p=1") {
    AsymptoticConfig cfg{2.0, 0.4, 100, 100};
    PhaseConstants c = phase_constants(cfg);
    const double euler = 0.5772156649015328606;
    CHECK(c.theta_c == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.f == doctest::Approx(2.0 * euler).epsilon(1e-12));
    // sigma^3 = -psi''(1) = 2 zeta(3)
    double expect_sigma = std::cbrt(2.0 * oracle::zeta3());
    CHECK(c.sigma == doctest::Approx(expect_sigma).epsilon(1e-12));
    CHECK(c.f_bar == doctest::Approx(-digamma(0.4) - digamma(1.6)).epsilon(1e-13));

    AsymptoticConfig bad{2.0, 2.4, 100, 100};
    CHECK_THROWS_AS(phase_constants(bad), std::invalid_argument);
}

TEST_CASE("sigma positive across the parameter block") {
    for (double theta : {0.5, 1.0, 2.0, 4.0}) {
        for (double p : {1.0, 2.0, 5.0}) {
            AsymptoticConfig cfg{theta, theta / 2.0, 100, static_cast<int>(100 * p)};
            PhaseConstants c = phase_constants(cfg);
            CHECK(c.sigma > 0.0);
        }
    }
}

TEST_CASE("gaussian cdf") {
    CHECK(gaussian_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(gaussian_cdf(8.0) - 1.0) < 1e-14);
    double expect = 0.5 * (1.0 + oracle::erf_series(1.0 / std::sqrt(2.0)));
    CHECK(gaussian_cdf(1.0) == doctest::Approx(expect).epsilon(1e-14));
    CHECK(gaussian_cdf(1.0) == doctest::Approx(0.841344746068543).epsilon(1e-12));
}

TEST_CASE("f_gue tails and monotonicity") {
    CHECK(std::abs(f_gue(10.0) - 1.0) < 1e-6);
    double a = f_gue(-2.0), b = f_gue(0.0), c = f_gue(2.0);
    CHECK(a < b);
    CHECK(b < c);
    CHECK(a > 0.0);
    CHECK(c < 1.0);
}

TEST_CASE("f_gue against the Airy-kernel oracle") {
    for (double t : {-4.0, -2.0, 0.0, 2.0}) {
        double ours = f_gue(t);
        double oracle_val = oracle::airy_fredholm_gue(t);
        INFO("t = ", t, " ours = ", ours, " oracle = ", oracle_val);
        CHECK(std::abs(ours - oracle_val) < 1e-5);
    }
}

TEST_CASE("f_gue at the oracle median") {
    // bisect the oracle for F = 1/2, then require our value matches
    double lo = -3.0, hi = 0.0;
    for (int i = 0; i < 60; ++i) {
        double mid = 0.5 * (lo + hi);
        if (oracle::airy_fredholm_gue(mid) < 0.5)
            lo = mid;
        else
            hi = mid;
    }
    double t_med = 0.5 * (lo + hi);
    CHECK(std::abs(f_gue(t_med) - 0.5) < 1e-5);
}

TEST_CASE("f_gue stability under refinement") {
    FredholmSpec base;
    FredholmSpec fine;
    fine.nodes_per_leg = 128;
    fine.leg_length = 16.0;
    for (double t : {-4.0, -1.0, 2.0}) {
        CHECK(std::abs(f_gue(t, base) - f_gue(t, fine)) < 1e-7);
    }
}

TEST_CASE("f_bbp reduces to f_gue") {
    for (double t : {-2.0, 0.0, 1.0}) {
        CHECK(std::abs(f_bbp(t, {}) - f_gue(t)) < 1e-10);
    }
}

TEST_CASE("f_bbp approaches f_gue at rate 1/|b| as b -> -inf") {
    // The limit holds with a first-order 1/|b| correction (the kernel
    // perturbation (w-v)/(v-b) is rank one and does not cancel), so the
    // distance at b = -8 is ~5e-2 at t = -2; verify the rate and the limit.
    for (double t : {-2.0, 0.0}) {
        double g = f_gue(t);
        double d8 = std::abs(f_bbp(t, {-8.0}) - g);
        double d16 = std::abs(f_bbp(t, {-16.0}) - g);
        double d32 = std::abs(f_bbp(t, {-32.0}) - g);
        CHECK(d16 < d8);
        CHECK(d32 < d16);
        // halving ratio close to 2 = O(1/U)
        CHECK(d8 / d16 == doctest::Approx(2.0).epsilon(0.15));
        CHECK(d16 / d32 == doctest::Approx(2.0).epsilon(0.15));
        CHECK(std::abs(f_bbp(t, {-512.0}) - g) < 1.2e-3);
    }
}

TEST_CASE("f_bbp with b = 0") {
    double v = f_bbp(0.0, {0.0});
    CHECK(v > 0.0);
    CHECK(v < 1.0);
    FredholmSpec fine;
    fine.nodes_per_leg = 96;
    CHECK(std::abs(f_bbp(0.0, {0.0}, fine) - v) < 1e-6);
}

TEST_CASE("bbp contour configuration error") {
    FredholmSpec spec;
    spec.c0 = -2.0;  // not right of b = 0
    spec.d0 = -1.0;
    CHECK_THROWS_AS(f_bbp(0.0, {0.0}, spec), std::invalid_argument);
}
