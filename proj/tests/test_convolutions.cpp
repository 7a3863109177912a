#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "klpoly/convolutions.hpp"
#include "klpoly/special.hpp"
#include "klpoly/testfamily.hpp"
#include "oracles.hpp"

using namespace klpoly;
using FE = FunctionExpr;

namespace {
const QuadratureConfig kCfg{};

QuadratureConfig direct_cfg() {
    QuadratureConfig c;
    c.abs_tol = 1e-8;
    c.rel_tol = 1e-7;
    return c;
}

PolyconvInput standard_triple() {
    return PolyconvInput{FE::exp_decay(1.0), FE::exp_decay(1.0), FE::indicator(1.0, 2.0), 0.5};
}
} // namespace

TEST_CASE("kernel vanishing and symmetry cancellations") {
    for (double x : {0.3, 1.0, 4.0}) {
        for (double v : {0.0, 0.7, 2.0}) {
            CHECK(std::fabs(kernel_phi(x, 0.0, v, 1.0)) <= 1e-300);
            CHECK(std::fabs(kernel_phi(0.0, x, v, 0.7)) <= 1e-300);
        }
    }
    // direct arithmetic at x = u = v = w = 1
    const double expected = std::exp(-std::cosh(1.0)) - std::exp(-std::cosh(3.0));
    CHECK(kernel_phi(1.0, 1.0, 1.0, 1.0) == doctest::Approx(expected).epsilon(1e-14));
    CHECK_THROWS_AS(kernel_phi(1.0, 1.0, 1.0, 0.0), DomainError);
}

TEST_CASE("sneddon convolution against brute force") {
    CHECK(sneddon_conv(FE::exp_decay(1.0), FE::gaussian(1.0), 0.0, kCfg) == 0.0);

    const FE f = FE::exp_decay(1.0), g = FE::exp_decay(1.0);
    const double x = 1.0;
    auto integrand = [x](double u) {
        return std::exp(-u) * (std::exp(-std::fabs(x - u)) - std::exp(-(x + u)));
    };
    const double ref = (oracle::integrate(integrand, 0.0, 1.0, 64) +
                        oracle::integrate(integrand, 1.0, 45.0, 256)) /
                       std::sqrt(2.0 * M_PI);
    CHECK(sneddon_conv(f, g, x, kCfg) == doctest::Approx(ref).epsilon(1e-9));
}

TEST_CASE("sneddon factorization identity") {
    const FE f = FE::exp_decay(1.0);
    const FE g = FE::exp_decay(2.0);
    const FE conv = sneddon_curve_expr(f, g, kCfg);
    const auto* tab = std::get_if<FE::Tabulated>(&conv.node());
    REQUIRE(tab != nullptr);
    for (double y : {0.3, 1.0, 2.5, 6.0}) {
        const double lhs = std::sqrt(2.0 / M_PI) *
                           smooth_curve_trig_integral(*tab->curve, y, TrigKind::sine);
        const double rhs = fourier_sine_at(f, y, kCfg) * fourier_cosine_at(g, y, kCfg);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-5));
    }
}

TEST_CASE("yakubovich-britvina convolution against 2d brute force") {
    CHECK(yb_conv(FE::exp_decay(1.0), FE::indicator(1.0, 2.0), 0.0, kCfg) == 0.0);

    const FE f = FE::exp_decay(1.0);
    const FE g = FE::indicator(1.0, 2.0);
    const double x = 1.0;
    auto inner = [x](double v) {
        return oracle::integrate(
            [v, x](double u) {
                return std::exp(-u * std::cosh(v - x)) - std::exp(-u * std::cosh(v + x));
            },
            1.0, 2.0, 16);
    };
    const double ref =
        0.5 * oracle::integrate([&](double v) { return std::exp(-v) * inner(v); }, 0.0, 40.0, 256);
    CHECK(yb_conv(f, g, x, kCfg) == doctest::Approx(ref).epsilon(1e-8));
}

TEST_CASE("yakubovich-britvina factorization identity") {
    const FE f = FE::exp_decay(1.0);
    const FE g = FE::indicator(1.0, 2.0);
    // tabulate (f *2 g) on a moderately fine curve, transform, compare
    Curve conv;
    const auto grid = GridSpec::uniform(0.0, 40.0, 601).points();
    conv.xs = grid;
    conv.vs.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) conv.vs[i] = yb_conv(f, g, grid[i], kCfg);
    for (double y : {0.3, 1.0, 2.5}) {
        const double lhs =
            std::sqrt(2.0 / M_PI) * smooth_curve_trig_integral(conv, y, TrigKind::sine);
        const double rhs = fourier_sine_at(f, y, kCfg) * kl_transform_at(g, y, kCfg);
        CHECK(lhs == doctest::Approx(rhs).epsilon(2e-5));
    }
}

TEST_CASE("polyconvolution trivial zeros") {
    PolyconvInput in = standard_triple();
    in.h = FE::zero();
    CHECK(polyconv_direct(in, 1.0, direct_cfg()) == doctest::Approx(0.0));
    CHECK(polyconv_composed(in, 2.0, kCfg) == doctest::Approx(0.0));
    const auto spec = polyconv_spectral(in, GridSpec::uniform(0.5, 4.0, 5), kCfg);
    for (double v : spec.values) CHECK(v == doctest::Approx(0.0));
    CHECK(polyconv_direct(standard_triple(), 0.0, direct_cfg()) == 0.0);
}

TEST_CASE("three-route agreement on the standard triple") {
    const PolyconvInput in = standard_triple();
    const PolySpectra sp = polyconv_spectra(in, kCfg);
    const FE inner = sneddon_curve_expr(in.f, in.g, kCfg);
    for (double x : {0.5, 1.0, 2.0}) {
        const double direct = polyconv_direct(in, x, direct_cfg());
        const double spectral = polyconv_spectral_at(sp, x, kCfg).value;
        const double composed = yb_conv(inner, in.h, x, kCfg);
        CHECK(std::fabs(direct - spectral) <= 1e-4);
        CHECK(std::fabs(direct - composed) <= 1e-3);
        CHECK(std::fabs(spectral - composed) <= 1e-3);
    }
}

TEST_CASE("multilinearity of the spectral route") {
    const PolyconvInput in = standard_triple();
    PolyconvInput scaled_in = in;
    scaled_in.f = FE::scaled(3.0, in.f);
    const PolySpectra a = polyconv_spectra(in, kCfg);
    const PolySpectra b = polyconv_spectra(scaled_in, kCfg);
    for (double x : {0.5, 2.0, 7.0}) {
        CHECK(polyconv_spectral_at(b, x, kCfg).value ==
              doctest::Approx(3.0 * polyconv_spectral_at(a, x, kCfg).value).epsilon(1e-8));
    }
}

TEST_CASE("l1 estimate of the polyconvolution") {
    const double c = std::sqrt(2.0 / M_PI);
    for (const auto& in : registered_test_triples(7, 3)) {
        const Curve poly = polyconv_spectral_curve(in, default_xgrid().points(), kCfg);
        const double lhs = curve_abs_integral(poly);
        const double rhs = c * norm(in.f, NormSpec::lp(1.0), kCfg) *
                           norm(in.g, NormSpec::lp(1.0), kCfg) *
                           norm(in.h, NormSpec::two_param(1.0, 0.0, in.beta), kCfg);
        CHECK(lhs < rhs);
    }
}

TEST_CASE("vanishing at infinity") {
    const PolyconvInput in = standard_triple();
    const PolySpectra sp = polyconv_spectra(in, kCfg);
    double peak = 0.0;
    for (double x : GridSpec::uniform(0.05, 10.0, 100).points())
        peak = std::max(peak, std::fabs(polyconv_spectral_at(sp, x, kCfg).value));
    const double far = std::fabs(polyconv_spectral_at(sp, 30.0, kCfg).value);
    CHECK(far < 1e-3 * peak);
}

TEST_CASE("kernel bound audits") {
    const auto r1 = kernel_bound_audit(KernelBoundKind::i1_dx, 1.0, 1.0, 1.0, kCfg);
    CHECK(r1.pass);
    CHECK(r1.rhs == doctest::Approx(4.0 * 0.4210244382).epsilon(1e-8));
    CHECK(r1.lhs > 0.0);

    const auto r0 = kernel_bound_audit(KernelBoundKind::i1_dx, 0.0, 1.0, 1.0, kCfg);
    CHECK(r0.pass);
    CHECK(r0.lhs == doctest::Approx(0.0));

    const auto r4 = kernel_bound_audit(KernelBoundKind::i4_dw, 1.0, 1.0, 1.0, kCfg);
    CHECK(r4.pass);
    CHECK(r4.rhs == doctest::Approx(4.0 / std::cosh(1.0)).epsilon(1e-12));

    for (auto kind : {KernelBoundKind::i2_du, KernelBoundKind::i3_dv}) {
        const auto r = kernel_bound_audit(kind, 0.5, 2.0, 1.0, kCfg);
        CHECK(r.pass);
        CHECK(r.margin >= 0.0);
    }
}
