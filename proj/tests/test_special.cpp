#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "klpoly/special.hpp"
#include "oracles.hpp"

using namespace klpoly;

namespace {
const QuadratureConfig kCfg{};

double k0_oracle(double x) {
    // independent route: tanh-sinh at fixed level on a generous window
    const double T = std::acosh((std::log(1e30) + std::log(2.0 / x)) / x + 1.0);
    return oracle::tanh_sinh([x](double t) { return std::exp(-x * std::cosh(t)); }, 0.0, T, 10);
}
} // namespace

TEST_CASE("k0 matches the independent tanh-sinh oracle") {
    CHECK(k0_oracle(1.0) == doctest::Approx(0.4210244382).epsilon(1e-9));
    CHECK(k0_oracle(0.5) == doctest::Approx(0.9244190712).epsilon(1e-9));
    for (double x : {0.05, 0.5, 1.0, 2.0, 7.0, 20.0}) {
        CHECK(k0(x, kCfg) == doctest::Approx(k0_oracle(x)).epsilon(1e-10));
    }
}

TEST_CASE("k0 domain and monotonicity") {
    CHECK_THROWS_AS(k0(0.0, kCfg), DomainError);
    CHECK_THROWS_AS(k0(-1.0, kCfg), DomainError);
    CHECK(k0(2.0, kCfg) < k0(1.0, kCfg));
    CHECK(k0(1.0, kCfg) > 0.0);
}

TEST_CASE("macdonald_iy reduces to k0 at y = 0") {
    for (double x : {0.3, 1.0, 5.0}) {
        CHECK(macdonald_iy(0.0, x, kCfg) == doctest::Approx(k0(x, kCfg)).epsilon(1e-10));
    }
}

TEST_CASE("macdonald_iy against brute-force fine-grid quadrature") {
    for (double x : {0.5, 1.0, 2.0}) {
        for (double y : {0.5, 1.0, 3.0, 8.0}) {
            const double T = std::acosh((std::log(1e18) + std::log(2.0 / x)) / x + 1.0);
            const double ref = oracle::integrate(
                [x, y](double t) { return std::exp(-x * std::cosh(t)) * std::cos(y * t); },
                0.0, T, 2048);
            CHECK(macdonald_iy(y, x, kCfg) == doctest::Approx(ref).epsilon(1e-9));
        }
    }
    CHECK(std::fabs(macdonald_iy(1.0, 1.0, kCfg)) <= 0.4210245);
}

TEST_CASE("bound chain of the Macdonald estimates on 200 random samples") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> ux(0.05, 10.0);
    std::uniform_real_distribution<double> uy(0.0, 12.0);
    std::uniform_real_distribution<double> ub(0.05, 1.0);
    int violations = 0;
    for (int i = 0; i < 200; ++i) {
        const double x = ux(rng), y = uy(rng), beta = ub(rng);
        const double kiy = macdonald_iy(y, x, kCfg);
        const double a = k0(x, kCfg);
        const double b = k0(beta * x, kCfg);
        if (!(std::fabs(kiy) <= a + 1e-9)) ++violations;
        if (!(a <= b + 1e-9)) ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("exponential-order bound |K_iy(x)| <= e^{-y arccos b} K0(bx)") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ux(0.1, 5.0);
    std::uniform_real_distribution<double> uy(0.0, 10.0);
    std::uniform_real_distribution<double> ub(0.2, 0.99);
    for (int i = 0; i < 60; ++i) {
        const double x = ux(rng), y = uy(rng), beta = ub(rng);
        const double kiy = std::fabs(macdonald_iy(y, x, kCfg));
        CHECK(kiy <= kiy_exponential_bound(y, x, beta, kCfg) + 1e-9);
    }
}

TEST_CASE("cosine projection: integral of K_iy(x) cos(ty) dy = (pi/2) e^{-x cosh t}") {
    // slow cos(yt) projection of the Macdonald function back to the kernel
    QuadratureConfig cfg = kCfg;
    cfg.abs_tol = 1e-11;
    for (double x : {0.5, 1.0, 2.0}) {
        for (double t : {0.0, 0.5, 1.0}) {
            const double expected = 0.5 * M_PI * std::exp(-x * std::cosh(t));
            // |K_iy(x)| <= e^{-y arccos(1/4)} K0(x/4)
            const auto env = DecayEnvelope::exponential(k0(0.25 * x, cfg), std::acos(0.25));
            const double got =
                integrate_oscillatory([x, &cfg](double y) { return macdonald_iy(y, x, cfg); },
                                      t, TrigKind::cosine, env, cfg)
                    .value;
            CHECK(got == doctest::Approx(expected).epsilon(1e-6));
        }
    }
}

TEST_CASE("gamma function values and identities") {
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-13));
    for (double x : {0.25, 0.8, 1.7, 3.3, 11.5, 41.0}) {
        CHECK(gamma_fn(x + 1.0) == doctest::Approx(x * gamma_fn(x)).epsilon(1e-12));
    }
    // reflection spot-check inside (0, 1)
    CHECK(gamma_fn(0.3) * gamma_fn(0.7) ==
          doctest::Approx(M_PI / std::sin(0.3 * M_PI)).epsilon(1e-12));
    CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
    CHECK_THROWS_AS(gamma_fn(-2.0), DomainError);
}

TEST_CASE("sech basics") {
    CHECK(sech(0.0) == 1.0);
    CHECK(sech(20.0) < 1e-8);
    for (double t : {0.1, 1.0, 5.0, 30.0, 500.0}) {
        CHECK(sech(-t) == sech(t));
        CHECK(sech(t) > 0.0);
        CHECK(sech(t) <= 1.0);
    }
    CHECK(std::isfinite(sech(1000.0)));
}

TEST_CASE("k0 closed upper bound holds") {
    for (double z : {0.01, 0.1, 0.5, 1.0, 3.0, 10.0, 40.0}) {
        CHECK(k0(z, kCfg) <= k0_upper_bound(z) * (1.0 + 1e-12));
    }
}
