#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>

#include "klpoly/funcmodel.hpp"
#include "klpoly/io.hpp"
#include "klpoly/special.hpp"
#include "oracles.hpp"

using namespace klpoly;
using FE = FunctionExpr;

namespace {
const QuadratureConfig kCfg{};

FE random_expr(std::mt19937& rng) {
    std::uniform_real_distribution<double> par(0.5, 3.0);
    std::uniform_int_distribution<int> pick(0, 3);
    switch (pick(rng)) {
        case 0: return FE::exp_decay(par(rng));
        case 1: return FE::pow_exp(1 + (rng() % 2), par(rng));
        case 2: return FE::gaussian(par(rng));
        default: {
            const double lo = par(rng) * 0.5;
            return FE::indicator(lo, lo + par(rng));
        }
    }
}
} // namespace

TEST_CASE("grid invariants") {
    CHECK_THROWS_AS(GridSpec::uniform(1.0, 1.0, 4), DomainError);
    CHECK_THROWS_AS(GridSpec::uniform(0.0, 1.0, 1), DomainError);
    CHECK_THROWS_AS(GridSpec::log_uniform(0.0, 1.0, 4), DomainError);
    const auto g = GridSpec::log_uniform(0.1, 10.0, 5);
    const auto p = g.points();
    CHECK(p.front() == 0.1);
    CHECK(p.back() == 10.0);
    CHECK(p[2] == doctest::Approx(1.0));
}

TEST_CASE("eval basics") {
    CHECK(FE::exp_decay(1.0).eval(0.0) == 1.0);
    CHECK(FE::indicator(1.0, 2.0).eval(1.5) == 1.0);
    CHECK(FE::indicator(1.0, 2.0).eval(3.0) == 0.0);
    const double c = std::sqrt(M_PI / 2.0);
    CHECK(FE::scaled(c, FE::exp_decay(1.0)).eval(1.0) ==
          doctest::Approx(c * std::exp(-1.0)).epsilon(1e-15));
    CHECK_THROWS_AS(FE::exp_decay(1.0).eval(-0.1), DomainError);
    CHECK_THROWS_AS(FE::indicator(1.0, 0.5), DomainError);
    CHECK_THROWS_AS(FE::exp_decay(-1.0), DomainError);
}

TEST_CASE("sample writes pointwise values") {
    const auto s = sample(FE::exp_decay(1.0), GridSpec::uniform(0.0, 1.0, 2));
    CHECK(s.values[0] == 1.0);
    CHECK(s.values[1] == doctest::Approx(std::exp(-1.0)));

    const auto z = sample(FE::zero(), GridSpec::uniform(0.0, 5.0, 7));
    for (double v : z.values) CHECK(v == 0.0);

    const auto gg = sample(FE::gaussian(1.0), GridSpec::uniform(0.0, 2.0, 3));
    CHECK(gg.values[0] == 1.0);
    CHECK(gg.values[1] == doctest::Approx(std::exp(-1.0)));
    CHECK(gg.values[2] == doctest::Approx(std::exp(-4.0)));
}

TEST_CASE("interpolation conventions") {
    SampledFunction s;
    s.grid = GridSpec::uniform(0.0, 3.0, 4);
    s.values = {1.0, 3.0, 2.0, 8.0};
    CHECK(interpolate(s, 1.0) == 3.0);
    CHECK(interpolate(s, 1.5) == doctest::Approx(2.5));
    CHECK(interpolate(s, 5.0) == 0.0);   // beyond the grid: decay convention
    CHECK(interpolate(s, 0.0) == 1.0);
}

TEST_CASE("tabulated expressions vanish beyond their grid") {
    const auto s = sample(FE::exp_decay(1.0), GridSpec::uniform(0.0, 4.0, 64));
    const auto t = FE::tabulated(s);
    CHECK(t.eval(2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-3));
    CHECK(t.eval(4.5) == 0.0);
}

TEST_CASE("norm: closed-form cases") {
    CHECK(norm(FE::exp_decay(1.0), NormSpec::lp(1.0), kCfg) ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(norm(FE::exp_decay(1.0), NormSpec::lp(2.0), kCfg) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("norm: two-parameter weight against the 2d oracle") {
    // integral of e^{-x} K0(x) swaps into integral of 1/(1+cosh t) = 1
    const double ref = oracle::integrate(
        [](double t) { return 1.0 / (1.0 + std::cosh(t)); }, 0.0, 42.0, 64);
    CHECK(ref == doctest::Approx(1.0).epsilon(1e-12));
    const double got = norm(FE::exp_decay(1.0), NormSpec::two_param(1.0, 0.0, 1.0), kCfg);
    CHECK(got == doctest::Approx(ref).epsilon(1e-8));
}

TEST_CASE("norm: p = infinity is a dense-grid supremum") {
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(norm(FE::exp_decay(1.0), NormSpec::lp(inf), kCfg) == doctest::Approx(1.0));
    CHECK(norm(FE::scaled(-2.5, FE::indicator(1.0, 2.0)), NormSpec::lp(inf), kCfg) ==
          doctest::Approx(2.5));
}

TEST_CASE("norm homogeneity across weight variants") {
    const FE f = FE::sum(FE::exp_decay(1.0), FE::pow_exp(1, 2.0));
    const double c = -3.75;
    const FE cf = FE::scaled(c, f);
    for (const NormSpec& spec :
         {NormSpec::lp(1.0), NormSpec::lp(2.5), NormSpec::two_param(2.0, 0.5, 0.8),
          NormSpec::three_param(1.5, 0.5, 1.0, 1.2),
          NormSpec::custom(2.0, FE::exp_decay(0.5))}) {
        const double n1 = norm(f, spec, kCfg);
        const double n2 = norm(cf, spec, kCfg);
        CHECK(n2 == doctest::Approx(std::fabs(c) * n1).epsilon(1e-8));
    }
}

TEST_CASE("triangle inequality on random pairs") {
    std::mt19937 rng(314);
    for (int i = 0; i < 12; ++i) {
        const FE f = random_expr(rng);
        const FE g = random_expr(rng);
        for (double p : {1.0, 2.0}) {
            const auto spec = NormSpec::lp(p);
            const double lhs = norm(FE::sum(f, g), spec, kCfg);
            const double rhs = norm(f, spec, kCfg) + norm(g, spec, kCfg);
            CHECK(lhs <= rhs + 1e-7);
        }
    }
}

TEST_CASE("space nesting: compactly supported functions") {
    // for support in [lo, hi]: K0(beta x) >= K0(beta hi) there is wrong-way;
    // K0 decreasing means K0(beta x) <= K0(beta lo), so the weighted norm is
    // dominated by K0(beta lo)^{1/p} times the unweighted norm.
    const FE f = FE::indicator(1.0, 2.5);
    const double beta = 0.7, p = 2.0;
    const double weighted = norm(f, NormSpec::two_param(p, 0.0, beta), kCfg);
    const double unweighted = norm(f, NormSpec::lp(p), kCfg);
    CHECK(weighted <= std::pow(k0(beta * 1.0, kCfg), 1.0 / p) * unweighted + 1e-9);
}

TEST_CASE("three-parameter norm of the constant via Gradshteyn 3.381.4") {
    // constant 1 on [0, 1e4]; the weight kills everything far before 1e4
    const FE one = FE::indicator(0.0, 1e4);
    for (auto [a1, b1, g1, s] : {std::tuple{0.0, 1.0, 1.0, 1.0},
                                 std::tuple{0.5, 1.5, 2.0, 2.0},
                                 std::tuple{-0.5, 1.0, 1.0, 1.0}}) {
        const double closed =
            std::pow((1.0 / g1) * std::pow(b1, -(a1 + 1.0) / g1) * gamma_fn((a1 + 1.0) / g1),
                     1.0 / s);
        const double got = norm(one, NormSpec::three_param(s, a1, b1, g1), kCfg);
        CHECK(got == doctest::Approx(closed).epsilon(1e-8));
    }
}

TEST_CASE("tail bounds really bound the tails") {
    std::mt19937 rng(99);
    for (int i = 0; i < 10; ++i) {
        const FE f = random_expr(rng);
        for (double T : {0.0, 1.0, 3.0, 8.0}) {
            const double bound = tail_mass_bound(f, T);
            // integrate |f| piecewise so indicator jumps land on panel edges
            std::vector<double> cuts{T};
            for (double b : expr_breakpoints(f))
                if (b > T && b < T + 60.0) cuts.push_back(b);
            cuts.push_back(T + 60.0);
            std::sort(cuts.begin(), cuts.end());
            double actual = 0.0;
            for (std::size_t j = 0; j + 1 < cuts.size(); ++j)
                actual += oracle::integrate(
                    [&f](double x) { return std::fabs(f.eval(x)); }, cuts[j], cuts[j + 1], 64);
            CHECK(actual <= bound * (1.0 + 1e-9) + 1e-12);
            CHECK(pointwise_tail_bound(f, T) >= std::fabs(f.eval(T)) - 1e-12);
        }
    }
}

TEST_CASE("product simplifications stay pointwise-exact") {
    std::mt19937 rng(5);
    for (int i = 0; i < 8; ++i) {
        const FE a = random_expr(rng);
        const FE b = random_expr(rng);
        const FE ab = product(a, b);
        for (double x : {0.0, 0.3, 1.1, 2.7, 6.0}) {
            CHECK(ab.eval(x) == doctest::Approx(a.eval(x) * b.eval(x)).epsilon(5e-5));
        }
    }
    // closed-form pair
    const FE e = product(FE::exp_decay(1.0), FE::exp_decay(2.0));
    CHECK(std::holds_alternative<FE::ExpDecay>(e.node()));
}

TEST_CASE("csv round trip and validation") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path();
    const auto path = (dir / "klpoly_test_curve.csv").string();

    Curve c{{0.0, 0.5, 1.75, 4.0}, {1.0, 0.25, -0.5, 0.0}};
    save_curve_csv(c, path);
    const Curve back = load_curve_csv(path);
    CHECK(back.xs == c.xs);
    CHECK(back.vs == c.vs);

    write_text_atomic(path, "x,value\n1.0,2.0\n0.5,3.0\n");
    CHECK_THROWS_AS(load_curve_csv(path), ParseError);
    write_text_atomic(path, "x,value\n");
    CHECK_THROWS_AS(load_curve_csv(path), ParseError);
    fs::remove(path);
}
