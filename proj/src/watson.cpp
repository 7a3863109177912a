#include "klpoly/watson.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace klpoly {

namespace {
constexpr double kRoot2OverPi = 0.7978845608028654;

std::vector<double> dense_xs(double hi = 50.0, int n = 900) {
    // log-spaced so both the kink region near 0 and the tail are resolved
    std::vector<double> xs(n);
    const double lo = 1e-3;
    for (int i = 0; i < n; ++i)
        xs[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
    return xs;
}

Curve product_with_theta(const Curve& spectrum, const MultiplierTheta& theta) {
    if (spectrum.xs != theta.values.xs)
        throw DomainError("spectrum and multiplier must share working nodes");
    Curve p;
    p.xs = spectrum.xs;
    p.vs.resize(spectrum.vs.size());
    for (std::size_t i = 0; i < p.vs.size(); ++i)
        p.vs[i] = spectrum.vs[i] * theta.values.vs[i];
    return p;
}
} // namespace

MultiplierTheta MultiplierTheta::identity(double ymax) {
    MultiplierTheta t;
    t.values.xs = working_ynodes(ymax);
    t.values.vs.assign(t.values.xs.size(), 1.0);
    t.sup_abs = 1.0;
    return t;
}

void WatsonPair::validate() const {
    if (!(beta > 0.0 && beta < 1.0))
        throw DomainError("watson pair requires beta in (0, 1)");
}

MultiplierTheta theta_multiplier(const WatsonPair& pair, const QuadratureConfig& cfg) {
    pair.validate();
    // window sized for the KL decay, stretched for the (1+y^2) growth
    const double ymax = std::min(300.0, 1.3 * kl_window(pair.h0, pair.beta, 1e-13, cfg));
    MultiplierTheta t;
    const Curve fc = trig_spectrum_curve(pair.g0, TrigKind::cosine, ymax, cfg);
    const Curve kh = kl_spectrum_curve(pair.h0, ymax, cfg);
    t.values.xs = fc.xs;
    t.values.vs.resize(fc.vs.size());
    for (std::size_t i = 0; i < fc.vs.size(); ++i) {
        const double y = fc.xs[i];
        t.values.vs[i] = (1.0 + y * y) * fc.vs[i] * kh.vs[i];
        t.sup_abs = std::max(t.sup_abs, std::fabs(t.values.vs[i]));
    }
    return t;
}

InequalityReport check_condition_unitary(const MultiplierTheta& theta, double tol) {
    double max_dev = 0.0;
    double where = 0.0;
    for (std::size_t i = 0; i < theta.values.xs.size(); ++i) {
        const double y = theta.values.xs[i];
        const double dev = std::fabs(std::fabs(theta.values.vs[i]) - 1.0) / (1.0 + y * y);
        if (dev > max_dev) {
            max_dev = dev;
            where = y;
        }
    }
    InequalityReport r = InequalityReport::make(
        max_dev, tol, 1.0,
        "unitarity condition | |F_c g0 K[h0]| - 1/(1+y^2) |, worst at y = " +
            std::to_string(where),
        0.0);
    return r;
}

InequalityReport check_condition_unitary(const WatsonPair& pair, double tol,
                                         const QuadratureConfig& cfg) {
    return check_condition_unitary(theta_multiplier(pair, cfg), tol);
}

Curve watson_apply_curve(const FunctionExpr& f, const MultiplierTheta& theta,
                         const std::vector<double>& xs, const QuadratureConfig& cfg) {
    const double ymax = theta.values.back_x();
    Curve fs = trig_spectrum_curve(f, TrigKind::sine, ymax, cfg);
    const Curve p = product_with_theta(fs, theta);
    Curve out;
    out.xs = xs;
    out.vs.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        out.vs[i] = invert_trig_curve(p, xs[i], TrigKind::sine, cfg).value;
    return out;
}

SampledFunction watson_apply_spectral(const FunctionExpr& f, const MultiplierTheta& theta,
                                      const GridSpec& xgrid, const QuadratureConfig& cfg) {
    xgrid.validate();
    const Curve c = watson_apply_curve(f, theta, xgrid.points(), cfg);
    SampledFunction out;
    out.grid = xgrid;
    out.values = c.vs;
    return out;
}

SampledFunction watson_apply_spectral(const FunctionExpr& f, const WatsonPair& pair,
                                      const GridSpec& xgrid, const QuadratureConfig& cfg) {
    return watson_apply_spectral(f, theta_multiplier(pair, cfg), xgrid, cfg);
}

SampledFunction watson_apply_direct(const FunctionExpr& f, const WatsonPair& pair,
                                    const GridSpec& xgrid, double fd_step,
                                    const QuadratureConfig& cfg, FdDiagnostic* diag) {
    pair.validate();
    if (!(fd_step > 0)) throw DomainError("fd_step must be positive");
    xgrid.validate();
    const PolyconvInput in{f, pair.g0, pair.h0, pair.beta};
    auto P = [&](double x) { return polyconv_direct(in, x, cfg); };

    auto second_difference = [&](double x, double d) {
        if (x >= d) return (P(x + d) - 2.0 * P(x) + P(x - d)) / (d * d);
        // one-sided second-order stencil for x < d
        return (2.0 * P(x) - 5.0 * P(x + d) + 4.0 * P(x + 2.0 * d) - P(x + 3.0 * d)) /
               (d * d);
    };

    SampledFunction out;
    out.grid = xgrid;
    out.values.resize(xgrid.n);
    if (diag) {
        diag->richardson_error.assign(xgrid.n, 0.0);
        diag->shrink_ratio.assign(xgrid.n, 0.0);
    }
    for (int i = 0; i < xgrid.n; ++i) {
        const double x = xgrid.point(i);
        const double d2 = second_difference(x, fd_step);
        out.values[i] = P(x) - d2;
        if (diag) {
            const double d2h = second_difference(x, 0.5 * fd_step);
            const double d2q = second_difference(x, 0.25 * fd_step);
            diag->richardson_error[i] = std::fabs(d2 - d2h) * 4.0 / 3.0;
            const double denom = std::fabs(d2h - d2q);
            diag->shrink_ratio[i] = (denom > 0) ? std::fabs(d2 - d2h) / denom : 4.0;
        }
    }
    return out;
}

Curve watson_inverse_curve(const Curve& phi, const MultiplierTheta& theta,
                           const std::vector<double>& xs, const QuadratureConfig& cfg,
                           double cond_tol) {
    const InequalityReport cond = check_condition_unitary(theta, cond_tol);
    if (!cond.pass)
        throw ConditionNotSatisfiedError(
            "watson_inverse requires the unitarity condition; max deviation " +
            std::to_string(cond.lhs));

    // F_s phi on the multiplier's nodes, then the division form of the
    // inverse multiplier with a floor against blow-up
    Curve fphi;
    fphi.xs = theta.values.xs;
    fphi.vs.resize(fphi.xs.size());
    for (std::size_t i = 0; i < fphi.xs.size(); ++i)
        fphi.vs[i] = kRoot2OverPi *
                     smooth_curve_trig_integral(phi, fphi.xs[i], TrigKind::sine,
                                                BelowLo::constant);
    Curve p;
    p.xs = fphi.xs;
    p.vs.resize(fphi.vs.size());
    for (std::size_t i = 0; i < p.vs.size(); ++i) {
        double th = theta.values.vs[i];
        if (std::fabs(th) < 1e-12) th = (th < 0 ? -1e-12 : 1e-12);
        p.vs[i] = fphi.vs[i] / th;
    }
    Curve out;
    out.xs = xs;
    out.vs.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        out.vs[i] = invert_trig_curve(p, xs[i], TrigKind::sine, cfg).value;
    return out;
}

SampledFunction watson_inverse(const SampledFunction& phi, const MultiplierTheta& theta,
                               const GridSpec& xgrid, const QuadratureConfig& cfg,
                               double cond_tol) {
    xgrid.validate();
    const Curve c = watson_inverse_curve(phi.to_curve(), theta, xgrid.points(), cfg, cond_tol);
    SampledFunction out;
    out.grid = xgrid;
    out.values = c.vs;
    return out;
}

namespace {
FunctionExpr truncate_expr(const FunctionExpr& f, double N) {
    // f X_[0,N] is exactly representable as a fine tabulation that
    // vanishes beyond its grid; jumps of f get node pairs so the
    // piecewise-linear carrier keeps them sharp
    const int n = std::max(400, static_cast<int>(200.0 * N));
    std::set<double> nodes;
    for (int i = 0; i <= n; ++i) nodes.insert(N * i / n);
    for (double b : expr_breakpoints(f))
        if (b > 0 && b < N) {
            nodes.insert(b);
            nodes.insert(std::nextafter(b, 0.0));
            nodes.insert(std::nextafter(b, N));
        }
    Curve c;
    for (double x : nodes) {
        c.xs.push_back(x);
        c.vs.push_back(f.eval(x));
    }
    return FunctionExpr::tabulated(std::move(c));
}
} // namespace

std::vector<double> plancherel_sequence(const FunctionExpr& f, const MultiplierTheta& theta,
                                        const std::vector<double>& n_list,
                                        const QuadratureConfig& cfg) {
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (!(n_list[i] > n_list[i - 1]))
            throw DomainError("plancherel_sequence requires increasing N_list");
    const std::vector<double> xs = dense_xs();
    std::vector<double> out;
    out.reserve(n_list.size());
    for (double N : n_list) {
        // ||phi_N - phi||_2 = ||T(f^N - f)||_2 by linearity; feeding the
        // tail f - f^N through one application avoids subtracting two
        // nearly equal curves
        const FunctionExpr tail =
            FunctionExpr::sum(f, FunctionExpr::scaled(-1.0, truncate_expr(f, N)));
        const Curve phi_tail = watson_apply_curve(tail, theta, xs, cfg);
        out.push_back(smooth_curve_lp_norm(phi_tail, 2.0));
    }
    return out;
}

std::vector<double> plancherel_sequence(const FunctionExpr& f, const WatsonPair& pair,
                                        const std::vector<double>& n_list,
                                        const QuadratureConfig& cfg) {
    return plancherel_sequence(f, theta_multiplier(pair, cfg), n_list, cfg);
}

InequalityReport l1_linfty_bound_audit(const FunctionExpr& f, const WatsonPair& pair,
                                       const QuadratureConfig& cfg) {
    const MultiplierTheta theta = theta_multiplier(pair, cfg);
    const Curve phi = watson_apply_curve(f, theta, dense_xs(), cfg);
    const double lhs = curve_sup(phi);
    const double theta_mass = curve_abs_integral(theta.values);
    const double M = (2.0 / M_PI) * theta_mass;
    const double rhs = M * norm(f, NormSpec::lp(1.0), cfg);
    return InequalityReport::make(
        lhs, rhs, M,
        "sup |T f| vs (2/pi) ||f||_1 int |Theta|; theta mass = " + std::to_string(theta_mass));
}

} // namespace klpoly
