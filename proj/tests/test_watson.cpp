#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "klpoly/watson.hpp"

using namespace klpoly;
using FE = FunctionExpr;

namespace {
const QuadratureConfig kCfg{};

QuadratureConfig direct_cfg() {
    QuadratureConfig c;
    c.abs_tol = 1e-9;
    c.rel_tol = 1e-8;
    return c;
}

WatsonPair generic_pair() { return WatsonPair{FE::exp_decay(1.0), FE::indicator(1.0, 2.0), 0.5}; }

Curve apply_on(const FunctionExpr& f, const MultiplierTheta& th,
               std::initializer_list<double> xs) {
    return watson_apply_curve(f, th, std::vector<double>(xs), kCfg);
}
} // namespace

TEST_CASE("theta multiplier basics") {
    WatsonPair p = generic_pair();
    const MultiplierTheta th = theta_multiplier(p, kCfg);
    CHECK(th.sup_abs > 0.0);
    CHECK(th.values.vs.back() < th.sup_abs);  // decays despite (1+y^2) growth

    // |Theta(y)| <= (1+y^2) sqrt(2/pi) ||g0||_1 e^{-y arccos b} ||h0||_{L1^{0,b}}
    const double mg = norm(p.g0, NormSpec::lp(1.0), kCfg);
    const double mh = norm(p.h0, NormSpec::two_param(1.0, 0.0, p.beta), kCfg);
    for (std::size_t i = 0; i < th.values.xs.size(); i += 40) {
        const double y = th.values.xs[i];
        const double bound = (1.0 + y * y) * std::sqrt(2.0 / M_PI) * mg *
                             std::exp(-y * std::acos(p.beta)) * mh;
        CHECK(std::fabs(th.values.vs[i]) <= bound + 1e-9);
    }

    p.h0 = FE::zero();
    const MultiplierTheta z = theta_multiplier(p, kCfg);
    CHECK(z.sup_abs == doctest::Approx(0.0));
    const auto phi0 = apply_on(FE::exp_decay(1.0), z, {0.5, 2.0});
    for (double v : phi0.vs) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("unitarity condition check") {
    // zero multiplier: deviation is sup 1/(1+y^2) at the lowest grid point
    WatsonPair p = generic_pair();
    p.h0 = FE::zero();
    const auto r0 = check_condition_unitary(p, 1e-6, kCfg);
    CHECK_FALSE(r0.pass);
    const double ymin = theta_multiplier(p, kCfg).values.front_x();
    CHECK(r0.lhs == doctest::Approx(1.0 / (1.0 + ymin * ymin)).epsilon(1e-9));

    CHECK_FALSE(check_condition_unitary(generic_pair(), 1e-6, kCfg).pass);
    CHECK(check_condition_unitary(MultiplierTheta::identity(), 1e-9).pass);
}

TEST_CASE("spectral application: zeros and linearity") {
    const MultiplierTheta th = theta_multiplier(generic_pair(), kCfg);
    const auto z = apply_on(FE::zero(), th, {0.5, 1.0, 4.0});
    for (double v : z.vs) CHECK(v == doctest::Approx(0.0));

    const auto a = apply_on(FE::exp_decay(1.0), th, {0.5, 1.0, 4.0});
    const auto b = apply_on(FE::pow_exp(1, 2.0), th, {0.5, 1.0, 4.0});
    const auto combo =
        apply_on(FE::sum(FE::scaled(2.0, FE::exp_decay(1.0)), FE::pow_exp(1, 2.0)), th,
                 {0.5, 1.0, 4.0});
    for (std::size_t i = 0; i < combo.vs.size(); ++i)
        CHECK(combo.vs[i] == doctest::Approx(2.0 * a.vs[i] + b.vs[i]).epsilon(1e-7));
}

TEST_CASE("spectral and direct routes agree") {
    const WatsonPair pair = generic_pair();
    const GridSpec grid = GridSpec::uniform(0.5, 2.0, 3);
    const double fd_step = 1e-2;
    const auto spectral = watson_apply_spectral(FE::exp_decay(1.0), pair, grid, kCfg);
    const auto direct =
        watson_apply_direct(FE::exp_decay(1.0), pair, grid, fd_step, direct_cfg());
    for (int i = 0; i < grid.n; ++i) {
        CHECK(std::fabs(spectral.values[i] - direct.values[i]) <=
              std::max(1e-3, 10.0 * fd_step * fd_step));
    }
}

TEST_CASE("richardson diagnostic shows second-order shrink") {
    const WatsonPair pair = generic_pair();
    const GridSpec grid = GridSpec::uniform(1.0, 2.0, 2);
    FdDiagnostic diag;
    watson_apply_direct(FE::exp_decay(1.0), pair, grid, 0.05, direct_cfg(), &diag);
    for (double r : diag.shrink_ratio) {
        CHECK(r > 2.0);
        CHECK(r < 8.0);
    }
}

TEST_CASE("multiplier-isometry surrogate") {
    // || T f ||_2 computed in x-space equals || Theta F_s f ||_2 in y-space
    const MultiplierTheta th = theta_multiplier(generic_pair(), kCfg);
    const FE f = FE::exp_decay(1.0);
    std::vector<double> xs;
    for (int i = 0; i < 1200; ++i)
        xs.push_back(std::exp(std::log(1e-3) + (std::log(60.0) - std::log(1e-3)) * i / 1199.0));
    const Curve phi = watson_apply_curve(f, th, xs, kCfg);
    const double lhs = smooth_curve_lp_norm(phi, 2.0);

    Curve prod = trig_spectrum_curve(f, TrigKind::sine, th.values.back_x(), kCfg);
    for (std::size_t i = 0; i < prod.vs.size(); ++i) prod.vs[i] *= th.values.vs[i];
    const double rhs = smooth_curve_lp_norm(prod, 2.0);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-4));
}

TEST_CASE("round trip under the synthetic unitary multiplier") {
    const MultiplierTheta th = MultiplierTheta::identity();
    std::vector<double> xs;
    for (int i = 0; i < 900; ++i)
        xs.push_back(std::exp(std::log(1e-3) + (std::log(50.0) - std::log(1e-3)) * i / 899.0));

    for (const FE& f : {FE::exp_decay(1.0), FE::pow_exp(1, 1.0), FE::pow_exp(2, 1.5)}) {
        const Curve phi = watson_apply_curve(f, th, xs, kCfg);
        const Curve back = watson_inverse_curve(phi, th, xs, kCfg);
        Curve diff;
        diff.xs = xs;
        diff.vs.resize(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) diff.vs[i] = back.vs[i] - f.eval(xs[i]);
        CHECK(smooth_curve_lp_norm(diff, 2.0) <= 1e-3);
    }
}

TEST_CASE("inverse refuses non-unitary multipliers and scales linearly") {
    const MultiplierTheta generic = theta_multiplier(generic_pair(), kCfg);
    const GridSpec grid = GridSpec::uniform(0.5, 4.0, 5);
    SampledFunction phi = sample(FE::exp_decay(1.0), grid);
    CHECK_THROWS_AS(watson_inverse(phi, generic, grid, kCfg), ConditionNotSatisfiedError);

    const MultiplierTheta th = MultiplierTheta::identity();
    const auto inv1 = watson_inverse(phi, th, grid, kCfg);
    SampledFunction phi2 = phi;
    for (double& v : phi2.values) v *= -3.0;
    const auto inv2 = watson_inverse(phi2, th, grid, kCfg);
    for (int i = 0; i < grid.n; ++i)
        CHECK(inv2.values[i] == doctest::Approx(-3.0 * inv1.values[i]).epsilon(1e-9));

    SampledFunction zero = sample(FE::zero(), grid);
    const auto invz = watson_inverse(zero, th, grid, kCfg);
    for (double v : invz.values) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("direct application of the zero function vanishes") {
    const auto z = watson_apply_direct(FE::zero(), generic_pair(),
                                       GridSpec::uniform(0.5, 1.5, 2), 1e-2, direct_cfg());
    for (double v : z.values) CHECK(std::fabs(v) <= 1e-9);
}

TEST_CASE("plancherel truncation sequence") {
    const MultiplierTheta th = MultiplierTheta::identity();

    // compactly supported f is exhausted by the first truncation
    const auto zero_seq = plancherel_sequence(FE::indicator(0.2, 0.8), th, {1.0, 2.0}, kCfg);
    for (double v : zero_seq) CHECK(v <= 1e-8);

    const auto seq = plancherel_sequence(FE::exp_decay(1.0), th, {1.0, 2.0, 4.0, 8.0}, kCfg);
    REQUIRE(seq.size() == 4);
    for (std::size_t i = 1; i < seq.size(); ++i) CHECK(seq[i] < seq[i - 1]);
    CHECK(seq.back() < 0.05 * seq.front());
    // e^{-x} tail: ||f^N - f||_2 = e^{-N}/sqrt(2), and the identity
    // multiplier preserves norms
    CHECK(seq[0] == doctest::Approx(std::exp(-1.0) / std::sqrt(2.0)).epsilon(1e-2));

    // non-unitary pair: the multiplier bound replaces the equality
    const WatsonPair pair = generic_pair();
    const MultiplierTheta th_pair = theta_multiplier(pair, kCfg);
    const auto seq_pair = plancherel_sequence(FE::exp_decay(1.0), th_pair, {1.0, 2.0}, kCfg);
    for (std::size_t i = 0; i < seq_pair.size(); ++i) {
        const double n = (i == 0) ? 1.0 : 2.0;
        const double tail_l2 = std::exp(-n) / std::sqrt(2.0);
        CHECK(seq_pair[i] <= th_pair.sup_abs * tail_l2 * (1.0 + 1e-6) + 1e-9);
    }
}

TEST_CASE("L1 -> Linf boundedness audit") {
    const WatsonPair pair = generic_pair();
    const auto r = l1_linfty_bound_audit(FE::exp_decay(1.0), pair, kCfg);
    CHECK(r.pass);
    CHECK(r.margin > 0.0);

    const auto rz = l1_linfty_bound_audit(FE::zero(), pair, kCfg);
    CHECK(rz.pass);

    const auto r10 = l1_linfty_bound_audit(FE::scaled(10.0, FE::exp_decay(1.0)), pair, kCfg);
    CHECK(r10.lhs == doctest::Approx(10.0 * r.lhs).epsilon(1e-8));
    CHECK(r10.rhs == doctest::Approx(10.0 * r.rhs).epsilon(1e-8));
}
