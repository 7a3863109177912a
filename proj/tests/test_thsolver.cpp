#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "klpoly/thsolver.hpp"

using namespace klpoly;
using FE = FunctionExpr;

namespace {
const QuadratureConfig kCfg{};

FE worked_phi() { return FE::scaled(std::sqrt(M_PI / 2.0), FE::exp_decay(1.0)); }

SolveReport worked_solve() {
    return solve_th(FE::exp_decay(1.0), worked_phi(), FE::indicator(1.0, 2.0), 0.5,
                    default_xgrid(), kCfg);
}
} // namespace

TEST_CASE("resolvent symbol of the worked example") {
    const auto sym = resolvent_symbol(worked_phi(), default_ygrid(), kCfg);
    for (int i = 0; i < sym.grid.n; i += 7) {
        const double y = sym.grid.point(i);
        CHECK(std::fabs(sym.values[i] - 1.0 / (2.0 + y * y)) <= 1e-6);
    }
}

TEST_CASE("resolvent symbol edge cases") {
    const auto zero = resolvent_symbol(FE::zero(), GridSpec::uniform(0.1, 4.0, 9), kCfg);
    for (double v : zero.values) CHECK(v == doctest::Approx(0.0));

    // 1 + F_c phi tends to 0 at small y for the negated worked kernel
    const FE bad = FE::scaled(-std::sqrt(M_PI / 2.0), FE::exp_decay(1.0));
    CHECK_THROWS_AS(resolvent_symbol(bad, default_ygrid(), kCfg, 1e-2), SingularSymbolError);
}

TEST_CASE("ell recovery against the closed form") {
    const Curve sym = resolvent_symbol_curve(worked_phi(), 300.0, kCfg);
    std::vector<double> xs;
    for (int i = 0; i <= 100; ++i) xs.push_back(0.1 * i);
    const Curve ell = recover_ell_curve(sym, xs, kCfg);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double expected = 0.5 * std::sqrt(M_PI) * std::exp(-std::sqrt(2.0) * xs[i]);
        CHECK(std::fabs(ell.vs[i] - expected) <= 1e-5);
    }
}

TEST_CASE("recovered ell transforms back to its spectrum") {
    const Curve sym = resolvent_symbol_curve(worked_phi(), 300.0, kCfg);
    std::vector<double> xs;
    for (int i = 0; i <= 4000; ++i) xs.push_back(0.01 * i);
    const Curve ell = recover_ell_curve(sym, xs, kCfg);
    const FE ell_tab = FE::tabulated(ell);
    for (double y : {0.2, 1.0, 3.0, 7.0}) {
        CHECK(std::fabs(fourier_cosine_at(ell_tab, y, kCfg) - 1.0 / (2.0 + y * y)) <= 1e-5);
    }
}

TEST_CASE("solver on the worked triple") {
    const SolveReport rep = worked_solve();
    CHECK(rep.residual_linf <= 1e-4);
    CHECK(rep.residual_l1 <= 1e-3);
    CHECK(rep.l1_bound_lhs <= rep.l1_bound_rhs + 1e-9);
    CHECK(rep.symbol_min_modulus >= 1.0);  // 1 + 1/(1+y^2) >= 1

    // the reported spectrum matches the closed resolvent
    for (int i = 0; i < rep.ell_spectrum.grid.n; i += 11) {
        const double y = rep.ell_spectrum.grid.point(i);
        CHECK(std::fabs(rep.ell_spectrum.values[i] - 1.0 / (2.0 + y * y)) <= 1e-6);
    }
    // and the recovered ell matches its closed form
    REQUIRE(rep.has_ell_function);
    for (int i = 0; i < rep.ell_function.grid.n; i += 37) {
        const double x = rep.ell_function.grid.point(i);
        const double expected = 0.5 * std::sqrt(M_PI) * std::exp(-std::sqrt(2.0) * x);
        CHECK(std::fabs(rep.ell_function.values[i] - expected) <= 1e-5);
    }
}

TEST_CASE("solver trivial inputs") {
    const auto r0 = solve_th(FE::zero(), worked_phi(), FE::indicator(1.0, 2.0), 0.5,
                             GridSpec::log_uniform(1e-3, 40.0, 60), kCfg);
    for (double v : r0.solution.values) CHECK(std::fabs(v) <= 1e-12);
    CHECK(r0.residual_linf <= 1e-9);

    const auto rh = solve_th(FE::exp_decay(1.0), worked_phi(), FE::zero(), 0.5,
                             GridSpec::log_uniform(1e-3, 40.0, 60), kCfg);
    for (double v : rh.solution.values) CHECK(std::fabs(v) <= 1e-12);
}

TEST_CASE("spectral and composed solution paths agree") {
    const SolveReport rep = worked_solve();
    // ell in closed form feeds the composed route [(xi *1 ell) *2 h]
    const FE ell = FE::scaled(0.5 * std::sqrt(M_PI), FE::exp_decay(std::sqrt(2.0)));
    const PolyconvInput composed_in{FE::exp_decay(1.0), ell, FE::indicator(1.0, 2.0), 0.5};
    for (int i : {40, 160, 250, 320}) {
        const double x = rep.solution.grid.point(i);
        const double composed = polyconv_composed(composed_in, x, kCfg);
        CHECK(std::fabs(rep.solution.values[i] - composed) <= 1e-3);
    }
}

TEST_CASE("residual is sensitive to pointwise perturbations") {
    SolveReport rep = worked_solve();
    const auto before = residual_check(rep.solution, worked_phi(), FE::exp_decay(1.0),
                                       FE::indicator(1.0, 2.0), 0.5, kCfg);
    rep.solution.values[200] += 0.1;
    const auto after = residual_check(rep.solution, worked_phi(), FE::exp_decay(1.0),
                                      FE::indicator(1.0, 2.0), 0.5, kCfg);
    CHECK(after.first >= before.first + 0.08);
    CHECK(after.first <= before.first + 0.13);
}

TEST_CASE("a-priori solution estimates") {
    const FE xi = FE::exp_decay(1.0);
    const FE ell = FE::scaled(0.5 * std::sqrt(M_PI), FE::exp_decay(std::sqrt(2.0)));
    const FE h = FE::indicator(1.0, 2.0);

    const auto exps = ExponentTuple::young_norm(9.0 / 7, 9.0 / 7, 9.0 / 7, 3.0);
    const auto ra = solution_norm_estimate(xi, ell, h, exps, 0.5, kCfg);
    CHECK(ra.pass);
    CHECK(ra.margin > 0.0);

    const auto sup = solution_norm_estimate(xi, ell, h, ExponentTuple::sup_form(1.5, 1.5, 1.5), 0.5, kCfg);
    CHECK(sup.pass);

    const auto rz = solution_norm_estimate(FE::zero(), ell, h, exps, 0.5, kCfg);
    CHECK(rz.pass);
    CHECK(rz.lhs == doctest::Approx(0.0));

    const auto rb = solution_weighted_estimate(xi, FE::exp_decay(1.0), FE::exp_decay(1.0),
                                     FE::exp_decay(1.0), FE::exp_decay(2.0), 2.0, kCfg);
    CHECK(rb.pass);
}
