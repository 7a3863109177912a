#include "klpoly/convolutions.hpp"

#include <algorithm>
#include <cmath>

#include "klpoly/special.hpp"

namespace klpoly {

namespace {

constexpr double kHalfRoot2Pi = 0.19947114020071635;  // 1/(2 sqrt(2 pi))
constexpr double kRootHalfPi = 0.3989422804014327;    // 1/sqrt(2 pi)
constexpr double kRoot2OverPi = 0.7978845608028654;   // sqrt(2/pi)

QuadratureConfig scaled_cfg(const QuadratureConfig& cfg, double abs_factor,
                            double abs_floor) {
    QuadratureConfig c = cfg;
    c.abs_tol = std::max(abs_floor, cfg.abs_tol * abs_factor);
    c.rel_tol = std::min(cfg.rel_tol, 1e-8);
    return c;
}

// integral of h(w) e^{-c w} dw; c >= 1 throughout (cosh arguments).
double laplace_of(const FunctionExpr& h, double c, const QuadratureConfig& cfg) {
    const DecayEnvelope env = envelope_of(h).damped(1.0, c);
    if (env.tail_mass(0.0) < 0.01 * cfg.abs_tol) return 0.0;
    auto f = [&h, c](double w) { return h.eval(w) * exp_floored(-c * w); };
    return integrate_semi_infinite(f, 0.0, env, cfg, expr_breakpoints(h)).value;
}

DecayEnvelope shifted_cosh_envelope(double w, double shift, double coef) {
    const DecayEnvelope base = DecayEnvelope::cosh_exponential(w);
    return DecayEnvelope{
        [base, shift, coef](double t) { return coef * base.pointwise(std::max(0.0, t - shift)); },
        [base, shift, coef](double t) {
            const double s = std::max(0.0, t - shift);
            // mass over [t, inf) of coef e^{-w cosh(. - shift)} = plateau + tail
            return coef * ((t < shift) ? (shift - t) * base.pointwise(0.0) + base.tail_mass(0.0)
                                       : base.tail_mass(s));
        }};
}

} // namespace

void PolyconvInput::validate() const {
    if (!(beta > 0.0 && beta <= 1.0))
        throw DomainError("polyconvolution requires beta in (0, 1]");
}

double kernel_phi(double x, double u, double v, double w) {
    if (!(w > 0)) throw DomainError("kernel_phi requires w > 0");
    if (!(x >= 0 && u >= 0 && v >= 0))
        throw DomainError("kernel_phi requires x, u, v >= 0");
    const double e1 = exp_floored(-w * std::cosh(x - u + v));
    const double e2 = exp_floored(-w * std::cosh(x - u - v));
    const double e3 = exp_floored(-w * std::cosh(x + u + v));
    const double e4 = exp_floored(-w * std::cosh(x + u - v));
    // grouped so the analytic cancellations at x = 0 and u = 0 are exact
    return (e1 - e3) + (e2 - e4);
}

double sneddon_conv(const FunctionExpr& f, const FunctionExpr& g, double x,
                    const QuadratureConfig& cfg) {
    if (!(x >= 0)) throw DomainError("sneddon_conv requires x >= 0");
    if (x == 0.0) return 0.0;  // g(|0-u|) == g(0+u)

    auto integrand = [&f, &g, x](double u) {
        return f.eval(u) * (g.eval(std::fabs(x - u)) - g.eval(x + u));
    };
    const DecayEnvelope env = envelope_of(f).scaled(2.0 * sup_bound(g));

    std::vector<double> bp{x};
    for (double b : expr_breakpoints(g)) {
        bp.push_back(x + b);
        if (x - b > 0) bp.push_back(x - b);
        if (b - x > 0) bp.push_back(b - x);
    }
    for (double b : expr_breakpoints(f)) bp.push_back(b);

    return kRootHalfPi * integrate_semi_infinite(integrand, 0.0, env, cfg, bp).value;
}

double yb_conv(const FunctionExpr& f, const FunctionExpr& g, double x,
               const QuadratureConfig& cfg) {
    if (!(x >= 0)) throw DomainError("yb_conv requires x >= 0");
    if (x == 0.0) return 0.0;  // cosh(v-0) == cosh(v+0)

    const QuadratureConfig icfg = scaled_cfg(cfg, 1e-4, 1e-14);
    auto integrand = [&](double v) {
        const double c1 = std::cosh(v - x);
        const double c2 = std::cosh(v + x);
        return f.eval(v) * (laplace_of(g, c1, icfg) - laplace_of(g, c2, icfg));
    };
    const DecayEnvelope env = envelope_of(f).scaled(2.0 * tail_mass_bound(g, 0.0));
    const double raw =
        integrate_semi_infinite(integrand, 0.0, env, cfg, expr_breakpoints(f)).value;
    return 0.5 * raw;
}

double polyconv_direct(const PolyconvInput& in, double x, const QuadratureConfig& cfg) {
    in.validate();
    if (!(x >= 0)) throw DomainError("polyconv requires x >= 0");
    if (x == 0.0) return 0.0;  // the kernel vanishes identically

    const QuadratureConfig wcfg = scaled_cfg(cfg, 1e-5, 1e-14);
    const QuadratureConfig vcfg = scaled_cfg(cfg, 1e-2, 1e-12);

    const double mass_h = tail_mass_bound(in.h, 0.0);
    const double mass_g = tail_mass_bound(in.g, 0.0);

    auto w_slice = [&](double u, double v) {
        double acc = 0.0;
        try {
            acc += laplace_of(in.h, std::cosh(x - u + v), wcfg);
            acc += laplace_of(in.h, std::cosh(x - u - v), wcfg);
            acc -= laplace_of(in.h, std::cosh(x + u + v), wcfg);
            acc -= laplace_of(in.h, std::cosh(x + u - v), wcfg);
        } catch (const NonConvergenceError& e) {
            throw NonConvergenceError(std::string("w-axis: ") + e.what());
        }
        return acc;
    };

    auto v_slice = [&](double u) {
        auto gv = [&](double v) { return in.g.eval(v) * w_slice(u, v); };
        const DecayEnvelope venv = envelope_of(in.g).scaled(4.0 * mass_h);
        try {
            return integrate_semi_infinite(gv, 0.0, venv, vcfg, expr_breakpoints(in.g)).value;
        } catch (const NonConvergenceError& e) {
            throw NonConvergenceError(std::string("v-axis: ") + e.what());
        }
    };

    auto fu = [&](double u) { return in.f.eval(u) * v_slice(u); };
    const DecayEnvelope uenv = envelope_of(in.f).scaled(4.0 * mass_h * mass_g);
    double raw;
    try {
        raw = integrate_semi_infinite(fu, 0.0, uenv, cfg, expr_breakpoints(in.f)).value;
    } catch (const NonConvergenceError& e) {
        throw NonConvergenceError(std::string("u-axis: ") + e.what());
    }
    return kHalfRoot2Pi * raw;
}

PolySpectra polyconv_spectra(const PolyconvInput& in, const QuadratureConfig& cfg) {
    in.validate();
    if (!(in.beta < 1.0))
        throw DomainError("the spectral route requires beta in (0, 1)");

    // window: beyond ymax the spectral product is below ~1e-10 of its scale
    const double mf = kRoot2OverPi * tail_mass_bound(in.f, 0.0);
    const double mg = kRoot2OverPi * tail_mass_bound(in.g, 0.0);
    const double target = 1e-10 / std::max(1.0, mf * mg);
    const double ymax = kl_window(in.h, in.beta, std::max(target, 1e-300), cfg);

    PolySpectra sp;
    sp.fs = trig_spectrum_curve(in.f, TrigKind::sine, ymax, cfg);
    sp.fc = trig_spectrum_curve(in.g, TrigKind::cosine, ymax, cfg);
    sp.kh = kl_spectrum_curve(in.h, ymax, cfg);
    sp.product.xs = sp.fs.xs;
    sp.product.vs.resize(sp.fs.vs.size());
    for (std::size_t i = 0; i < sp.fs.vs.size(); ++i)
        sp.product.vs[i] = sp.fs.vs[i] * sp.fc.vs[i] * sp.kh.vs[i];
    return sp;
}

InvertResult polyconv_spectral_at(const PolySpectra& sp, double x,
                                  const QuadratureConfig& cfg) {
    return invert_trig_curve(sp.product, x, TrigKind::sine, cfg);
}

SampledFunction polyconv_spectral(const PolyconvInput& in, const GridSpec& xgrid,
                                  const QuadratureConfig& cfg) {
    xgrid.validate();
    const PolySpectra sp = polyconv_spectra(in, cfg);
    SampledFunction out;
    out.grid = xgrid;
    out.values.resize(xgrid.n);
    for (int i = 0; i < xgrid.n; ++i)
        out.values[i] = polyconv_spectral_at(sp, xgrid.point(i), cfg).value;
    return out;
}

Curve polyconv_spectral_curve(const PolyconvInput& in, const std::vector<double>& xs,
                              const QuadratureConfig& cfg) {
    const PolySpectra sp = polyconv_spectra(in, cfg);
    Curve c;
    c.xs = xs;
    c.vs.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        c.vs[i] = polyconv_spectral_at(sp, xs[i], cfg).value;
    return c;
}

GridSpec composition_grid() { return GridSpec::log_uniform(1e-3, 40.0, 400); }

FunctionExpr sneddon_curve_expr(const FunctionExpr& f, const FunctionExpr& g,
                                const QuadratureConfig& cfg, const GridSpec& grid) {
    SampledFunction s;
    s.grid = grid;
    s.values.resize(grid.n);
    for (int i = 0; i < grid.n; ++i) s.values[i] = sneddon_conv(f, g, grid.point(i), cfg);
    return FunctionExpr::tabulated(s);
}

double polyconv_composed(const PolyconvInput& in, double x, const QuadratureConfig& cfg) {
    in.validate();
    const FunctionExpr inner = sneddon_curve_expr(in.f, in.g, cfg);
    return yb_conv(inner, in.h, x, cfg);
}

Curve polyconv_composed_curve(const PolyconvInput& in, const std::vector<double>& xs,
                              const QuadratureConfig& cfg) {
    in.validate();
    const FunctionExpr inner = sneddon_curve_expr(in.f, in.g, cfg);
    Curve c;
    c.xs = xs;
    c.vs.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) c.vs[i] = yb_conv(inner, in.h, xs[i], cfg);
    return c;
}

InequalityReport kernel_bound_audit(KernelBoundKind kind, double c1, double c2, double c3,
                                    const QuadratureConfig& cfg) {
    double lhs = 0.0, rhs = 0.0;
    std::string detail;

    if (kind == KernelBoundKind::i4_dw) {
        const double x = c1, u = c2, v = c3;
        const double cmin = std::min(std::min(std::cosh(x - u + v), std::cosh(x - u - v)),
                                     std::min(std::cosh(x + u + v), std::cosh(x + u - v)));
        auto f = [&](double w) { return std::fabs(kernel_phi(x, u, v, w)); };
        lhs = integrate_semi_infinite(f, 0.0, DecayEnvelope::exponential(4.0, cmin), cfg)
                  .value;
        rhs = 4.0 / cmin;  // 4 sech(t_min)
        detail = "I4 = int |Phi(x,u,v,.)| dw vs 4 sech(t_min), (x,u,v) = (" +
                 std::to_string(x) + ", " + std::to_string(u) + ", " + std::to_string(v) + ")";
        return InequalityReport::make(lhs, rhs, 4.0, detail);
    }

    double w = 0.0, shift = 0.0;
    std::function<double(double)> f;
    switch (kind) {
        case KernelBoundKind::i1_dx: {
            const double u = c1, v = c2;
            w = c3;
            shift = u + v;
            f = [u, v, w](double x) { return std::fabs(kernel_phi(x, u, v, w)); };
            detail = "I1 = int |Phi(.,u,v,w)| dx";
            break;
        }
        case KernelBoundKind::i2_du: {
            const double x = c1, v = c2;
            w = c3;
            shift = x + v;
            f = [x, v, w](double u) { return std::fabs(kernel_phi(x, u, v, w)); };
            detail = "I2 = int |Phi(x,.,v,w)| du";
            break;
        }
        default: {
            const double x = c1, u = c2;
            w = c3;
            shift = x + u;
            f = [x, u, w](double v) { return std::fabs(kernel_phi(x, u, v, w)); };
            detail = "I3 = int |Phi(x,u,.,w)| dv";
            break;
        }
    }
    lhs = integrate_semi_infinite(f, 0.0, shifted_cosh_envelope(w, shift, 4.0), cfg).value;
    rhs = 4.0 * k0(w, cfg);
    detail += " vs 4 K0(w), w = " + std::to_string(w);
    return InequalityReport::make(lhs, rhs, 4.0, detail);
}

} // namespace klpoly

// out-of-line here to keep reports.hpp header-only-light
namespace klpoly {
InequalityReport InequalityReport::make(double lhs, double rhs, double constant,
                                        std::string detail, double tol) {
    InequalityReport r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.constant_used = constant;
    r.margin = rhs - lhs;
    r.pass = lhs <= rhs + tol * (1.0 + std::fabs(rhs));
    r.detail = std::move(detail);
    return r;
}
} // namespace klpoly
