#include "klpoly/thsolver.hpp"

#include <cmath>

#include "klpoly/convolutions.hpp"

namespace klpoly {

namespace {
constexpr double kRoot2OverPi = 0.7978845608028654;

double symbol_value(double fc_phi, double delta, double y) {
    const double denom = 1.0 + fc_phi;
    if (std::fabs(denom) < delta)
        throw SingularSymbolError("1 + (F_c phi)(y) has modulus " + std::to_string(std::fabs(denom)) +
                                      " < delta at y = " + std::to_string(y),
                                  y, std::fabs(denom));
    return fc_phi / denom;
}
} // namespace

SampledFunction resolvent_symbol(const FunctionExpr& phi, const GridSpec& ygrid,
                                 const QuadratureConfig& cfg, double delta) {
    ygrid.validate();
    if (!(delta > 0)) throw DomainError("delta must be positive");
    SampledFunction out;
    out.grid = ygrid;
    out.values.resize(ygrid.n);
    for (int i = 0; i < ygrid.n; ++i) {
        const double y = ygrid.point(i);
        out.values[i] = symbol_value(fourier_cosine_at(phi, y, cfg), delta, y);
    }
    return out;
}

Curve resolvent_symbol_curve(const FunctionExpr& phi, double ymax,
                             const QuadratureConfig& cfg, double delta) {
    if (!(delta > 0)) throw DomainError("delta must be positive");
    const Curve fc = trig_spectrum_curve(phi, TrigKind::cosine, ymax, cfg);
    Curve out;
    out.xs = fc.xs;
    out.vs.resize(fc.vs.size());
    for (std::size_t i = 0; i < fc.vs.size(); ++i)
        out.vs[i] = symbol_value(fc.vs[i], delta, fc.xs[i]);
    return out;
}

Curve recover_ell_curve(const Curve& ell_spectrum, const std::vector<double>& xs,
                        const QuadratureConfig& cfg) {
    Curve out;
    out.xs = xs;
    out.vs.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        out.vs[i] = invert_trig_curve(ell_spectrum, xs[i], TrigKind::cosine, cfg).value;
    return out;
}

SampledFunction recover_ell(const SampledFunction& ell_spectrum, const GridSpec& xgrid,
                            const QuadratureConfig& cfg) {
    xgrid.validate();
    const Curve c = recover_ell_curve(ell_spectrum.to_curve(), xgrid.points(), cfg);
    SampledFunction out;
    out.grid = xgrid;
    out.values = c.vs;
    return out;
}

SolveReport solve_th(const FunctionExpr& xi, const FunctionExpr& phi, const FunctionExpr& h,
                     double beta, const GridSpec& xgrid, const QuadratureConfig& cfg,
                     double delta, bool want_ell) {
    xgrid.validate();
    if (!(beta > 0 && beta <= 1.0)) throw DomainError("solve_th requires beta in (0, 1]");

    // spectral window: KL decay dominates the product
    const double ymax =
        std::max(kl_window(h, std::min(beta, 0.999), 1e-12, cfg), 40.0);

    const Curve fs_xi = trig_spectrum_curve(xi, TrigKind::sine, ymax, cfg);
    const Curve fc_phi = trig_spectrum_curve(phi, TrigKind::cosine, ymax, cfg);
    const Curve kh = kl_spectrum_curve(h, ymax, cfg);

    SolveReport rep;
    rep.symbol_min_modulus = std::numeric_limits<double>::infinity();
    Curve symbol;
    symbol.xs = fc_phi.xs;
    symbol.vs.resize(fc_phi.vs.size());
    for (std::size_t i = 0; i < fc_phi.vs.size(); ++i) {
        rep.symbol_min_modulus = std::min(rep.symbol_min_modulus, std::fabs(1.0 + fc_phi.vs[i]));
        symbol.vs[i] = symbol_value(fc_phi.vs[i], delta, fc_phi.xs[i]);
    }

    Curve product;
    product.xs = symbol.xs;
    product.vs.resize(symbol.vs.size());
    for (std::size_t i = 0; i < symbol.vs.size(); ++i)
        product.vs[i] = fs_xi.vs[i] * symbol.vs[i] * kh.vs[i];

    rep.solution.grid = xgrid;
    rep.solution.values.resize(xgrid.n);
    for (int i = 0; i < xgrid.n; ++i)
        rep.solution.values[i] =
            invert_trig_curve(product, xgrid.point(i), TrigKind::sine, cfg).value;

    // report the symbol on the default grid; keep ell for the L1 bound
    rep.ell_spectrum.grid = default_ygrid();
    rep.ell_spectrum.values.resize(rep.ell_spectrum.grid.n);
    for (int i = 0; i < rep.ell_spectrum.grid.n; ++i)
        rep.ell_spectrum.values[i] = symbol(rep.ell_spectrum.grid.point(i));

    const Curve ell = recover_ell_curve(symbol, xgrid.points(), cfg);
    if (want_ell) {
        rep.ell_function.grid = xgrid;
        rep.ell_function.values = ell.vs;
        rep.has_ell_function = true;
    }

    const auto residuals = residual_check(rep.solution, phi, xi, h, beta, cfg);
    rep.residual_linf = residuals.first;
    rep.residual_l1 = residuals.second;

    rep.l1_bound_lhs = curve_abs_integral(rep.solution.to_curve());
    rep.l1_bound_rhs = kRoot2OverPi * norm(xi, NormSpec::lp(1.0), cfg) *
                       curve_abs_integral(ell) *
                       norm(h, NormSpec::two_param(1.0, 0.0, beta), cfg);
    return rep;
}

std::pair<double, double> residual_check(const SampledFunction& f, const FunctionExpr& phi,
                                         const FunctionExpr& xi, const FunctionExpr& h,
                                         double beta, const QuadratureConfig& cfg) {
    f.validate();
    const FunctionExpr f_tab = FunctionExpr::tabulated(f);
    const PolyconvInput rhs_in{xi, phi, h, beta};
    const std::vector<double> xs = f.grid.points();
    const Curve rhs = polyconv_spectral_curve(rhs_in, xs, cfg);

    Curve res;
    res.xs = xs;
    res.vs.resize(xs.size());
    double linf = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r =
            f.values[i] + sneddon_conv(f_tab, phi, xs[i], cfg) - rhs.vs[i];
        res.vs[i] = r;
        linf = std::max(linf, std::fabs(r));
    }
    return {linf, curve_abs_integral(res)};
}

InequalityReport solution_norm_estimate(const FunctionExpr& xi, const FunctionExpr& ell,
                                const FunctionExpr& h, const ExponentTuple& exps,
                                double beta, const QuadratureConfig& cfg) {
    const PolyconvInput in{xi, ell, h, beta};
    const Curve f = polyconv_spectral_curve(in, default_xgrid().points(), cfg);
    const bool sup_mode = std::isinf(exps.s);
    const double lhs = sup_mode ? curve_sup(f) : smooth_curve_lp_norm(f, exps.s);
    const double c1 = constant_c1(exps.r);
    const double n_xi = norm(xi, NormSpec::lp(exps.p), cfg);
    const double n_ell = norm(ell, NormSpec::lp(exps.q), cfg);
    const double n_h = norm(h, NormSpec::two_param(exps.r, 0.0, beta), cfg);
    const double rhs = c1 * n_xi * n_ell * n_h;
    return InequalityReport::make(lhs, rhs, c1,
                                  std::string(sup_mode ? "s = inf mode; " : "") +
                                      "solution estimate via C1 and the factor norms");
}

InequalityReport solution_weighted_estimate(const FunctionExpr& xi, const FunctionExpr& ell1,
                                  const FunctionExpr& rho2, const FunctionExpr& h1,
                                  const FunctionExpr& rho3, double p,
                                  const QuadratureConfig& cfg) {
    return saitoh_audit(xi, ell1, h1, std::nullopt, rho2, rho3, p, cfg);
}

} // namespace klpoly
