#include "klpoly/inequalities.hpp"

#include <cmath>

#include "klpoly/special.hpp"

namespace klpoly {

namespace {
constexpr double kRoot2OverPi = 0.7978845608028654;

double inv(double e) { return std::isinf(e) ? 0.0 : 1.0 / e; }

void require_range(double e, double lo, const char* name) {
    if (std::isinf(e)) return;
    if (!(e >= lo)) throw DomainError(std::string(name) + " out of range");
}

// integral of curve(x) * fn(x) over [0, back], 8-point Gauss per segment
double curve_weighted_integral(const Curve& c, const std::function<double(double)>& fn) {
    static constexpr double X8[4] = {0.1834346424956498, 0.5255324099163290,
                                     0.7966664774136267, 0.9602898564975363};
    static constexpr double W8[4] = {0.3626837833783620, 0.3137066458778873,
                                     0.2223810344533745, 0.1012285362903763};
    auto piece = [&fn](double x0, double x1, double v0, double v1) {
        if (x1 <= x0) return 0.0;
        const double cmid = 0.5 * (x0 + x1), h = 0.5 * (x1 - x0);
        double s = 0.0;
        for (int i = 0; i < 4; ++i) {
            const double dx = h * X8[i];
            const double xl = cmid - dx, xr = cmid + dx;
            const double tl = (xl - x0) / (x1 - x0), tr = (xr - x0) / (x1 - x0);
            s += W8[i] * ((v0 + tl * (v1 - v0)) * fn(xl) + (v0 + tr * (v1 - v0)) * fn(xr));
        }
        return s * h;
    };
    double total = piece(0.0, c.front_x(), c.vs.front(), c.vs.front());
    for (std::size_t i = 0; i + 1 < c.xs.size(); ++i)
        total += piece(c.xs[i], c.xs[i + 1], c.vs[i], c.vs[i + 1]);
    return total;
}

double l1_weighted_norm(const FunctionExpr& h, double r, double beta,
                        const QuadratureConfig& cfg) {
    return norm(h, NormSpec::two_param(r, 0.0, beta), cfg);
}

std::string factors_detail(double nf, double ng, double nh, double c) {
    return "constant " + std::to_string(c) + ", ||f|| = " + std::to_string(nf) +
           ", ||g|| = " + std::to_string(ng) + ", ||h||_w = " + std::to_string(nh);
}
} // namespace

ExponentTuple ExponentTuple::young(double p, double q, double r, double s) {
    for (double e : {p, q, r, s})
        if (!(e > 1.0)) throw DomainError("young linkage requires exponents in (1, inf)");
    if (std::fabs(inv(p) + inv(q) + inv(r) + inv(s) - 3.0) > 1e-12)
        throw DomainError("young linkage 1/p + 1/q + 1/r + 1/s = 3 violated");
    return ExponentTuple{p, q, r, s};
}

ExponentTuple ExponentTuple::young_norm(double p, double q, double r, double s) {
    for (double e : {p, q, r, s}) require_range(e, 1.0, "exponent");
    if (std::fabs(inv(p) + inv(q) + inv(r) - 2.0 - inv(s)) > 1e-12)
        throw DomainError("norm linkage 1/p + 1/q + 1/r = 2 + 1/s violated");
    return ExponentTuple{p, q, r, s};
}

ExponentTuple ExponentTuple::sup_form(double p, double q, double r) {
    for (double e : {p, q, r})
        if (!(e > 1.0)) throw DomainError("sup linkage requires exponents in (1, inf)");
    if (std::fabs(inv(p) + inv(q) + inv(r) - 2.0) > 1e-12)
        throw DomainError("sup linkage 1/p + 1/q + 1/r = 2 violated");
    return ExponentTuple{p, q, r, std::numeric_limits<double>::infinity()};
}

double constant_c1(double r, double sech_t) {
    if (!(r > 1.0)) throw DomainError("constant_c1 requires r > 1");
    if (!(sech_t > 0.0 && sech_t <= 1.0)) throw DomainError("sech t lies in (0, 1]");
    const double expo = 1.0 - inv(r);
    return kRoot2OverPi * std::pow(sech_t, expo);
}

double constant_c2(double r, double s, double alpha1, double beta1, double gamma1,
                   double sech_t) {
    if (!(alpha1 > -1.0) || !(beta1 > 0.0) || !(gamma1 > 0.0))
        throw DomainError("three-parameter ranges: alpha1 > -1, beta1 > 0, gamma1 > 0");
    if (!(s >= 1.0)) throw DomainError("constant_c2 requires s >= 1");
    const double sbar = (alpha1 + 1.0) / gamma1;
    const double gr = (1.0 / gamma1) * std::pow(beta1, -sbar) * gamma_fn(sbar);
    return constant_c1(r, sech_t) * std::pow(gr, 1.0 / s);
}

PolyCurveCache make_poly_cache(const FunctionExpr& f, const FunctionExpr& g,
                               const FunctionExpr& h, double beta,
                               const QuadratureConfig& cfg) {
    const PolyconvInput in{f, g, h, beta};
    return PolyCurveCache{polyconv_spectral_curve(in, default_xgrid().points(), cfg)};
}

namespace {
Curve poly_or_cache(const FunctionExpr& f, const FunctionExpr& g, const FunctionExpr& h,
                    double beta, const QuadratureConfig& cfg, const PolyCurveCache* cache) {
    if (cache) return cache->poly;
    return make_poly_cache(f, g, h, beta, cfg).poly;
}
} // namespace

InequalityReport young_audit(const FunctionExpr& f, const FunctionExpr& g,
                             const FunctionExpr& h, const FunctionExpr& k,
                             const ExponentTuple& exps, double beta,
                             const QuadratureConfig& cfg, const PolyCurveCache* cache) {
    const Curve poly = poly_or_cache(f, g, h, beta, cfg, cache);
    const double lhs =
        std::fabs(curve_weighted_integral(poly, [&k](double x) { return k.eval(x); }));
    const double c1 = constant_c1(exps.r);
    const double nf = norm(f, NormSpec::lp(exps.p), cfg);
    const double ng = norm(g, NormSpec::lp(exps.q), cfg);
    const double nh = l1_weighted_norm(h, exps.r, beta, cfg);
    const double nk = norm(k, NormSpec::lp(exps.s), cfg);
    const double rhs = c1 * nf * ng * nh * nk;
    return InequalityReport::make(lhs, rhs, c1,
                                  factors_detail(nf, ng, nh, c1) +
                                      ", ||k|| = " + std::to_string(nk) +
                                      "");
}

InequalityReport young_norm_audit(const FunctionExpr& f, const FunctionExpr& g,
                                  const FunctionExpr& h, const ExponentTuple& exps,
                                  double beta, const QuadratureConfig& cfg,
                                  const PolyCurveCache* cache) {
    const Curve poly = poly_or_cache(f, g, h, beta, cfg, cache);
    const double lhs = smooth_curve_lp_norm(poly, exps.s);
    const double c1 = (exps.r > 1.0) ? constant_c1(exps.r) : kRoot2OverPi;
    const double nf = norm(f, NormSpec::lp(exps.p), cfg);
    const double ng = norm(g, NormSpec::lp(exps.q), cfg);
    const double nh = l1_weighted_norm(h, exps.r, beta, cfg);
    const double rhs = c1 * nf * ng * nh;
    return InequalityReport::make(lhs, rhs, c1, factors_detail(nf, ng, nh, c1));
}

InequalityReport linfty_audit(const FunctionExpr& f, const FunctionExpr& g,
                              const FunctionExpr& h, double p, double q, double r,
                              double beta, const QuadratureConfig& cfg,
                              const PolyCurveCache* cache) {
    ExponentTuple::sup_form(p, q, r);  // validates the linkage
    const Curve poly = poly_or_cache(f, g, h, beta, cfg, cache);
    const double lhs = curve_sup(poly);
    const double c1 = constant_c1(r);
    const double nf = norm(f, NormSpec::lp(p), cfg);
    const double ng = norm(g, NormSpec::lp(q), cfg);
    const double nh = l1_weighted_norm(h, r, beta, cfg);
    const double rhs = c1 * nf * ng * nh;
    return InequalityReport::make(lhs, rhs, c1,
                                  "dense-grid sup; " + factors_detail(nf, ng, nh, c1));
}

InequalityReport threeparam_audit(const FunctionExpr& f, const FunctionExpr& g,
                                  const FunctionExpr& h, double p, double q, double r,
                                  double s, double alpha1, double beta1, double gamma1,
                                  double beta, const QuadratureConfig& cfg,
                                  const PolyCurveCache* cache) {
    ExponentTuple::sup_form(p, q, r);
    const Curve poly = poly_or_cache(f, g, h, beta, cfg, cache);
    auto w3 = [alpha1, beta1, gamma1](double x) {
        return std::pow(x, alpha1) * exp_floored(-beta1 * std::pow(x, gamma1));
    };
    const double lhs = smooth_curve_lp_norm_weighted(poly, s, w3);
    const double c2 = constant_c2(r, s, alpha1, beta1, gamma1);
    const double nf = norm(f, NormSpec::lp(p), cfg);
    const double ng = norm(g, NormSpec::lp(q), cfg);
    const double nh = l1_weighted_norm(h, r, beta, cfg);
    const double rhs = c2 * nf * ng * nh;
    return InequalityReport::make(lhs, rhs, c2, factors_detail(nf, ng, nh, c2));
}

namespace {
void check_weight_positive(const FunctionExpr& rho) {
    for (int i = 0; i < 64; ++i) {
        const double x = std::exp(std::log(1e-3) + (std::log(40.0) - std::log(1e-3)) * i / 63.0);
        if (!(rho.eval(x) > 0.0))
            throw WeightVanishesError("saitoh weight is not strictly positive at x = " +
                                      std::to_string(x));
    }
}

double support_floor(const FunctionExpr& e) { return std::max(support_lower(e), 1e-3); }
} // namespace

InequalityReport saitoh_audit(const FunctionExpr& F1, const FunctionExpr& F2,
                              const FunctionExpr& F3,
                              const std::optional<FunctionExpr>& rho1,
                              const std::optional<FunctionExpr>& rho2,
                              const std::optional<FunctionExpr>& rho3, double p,
                              const QuadratureConfig& cfg) {
    if (!(p > 1.0)) throw DomainError("saitoh_audit requires p > 1");
    const int missing = int(!rho1) + int(!rho2) + int(!rho3);
    if (missing > 1)
        throw DomainError("at most one saitoh weight may degenerate to 1");
    for (const auto& r : {rho1, rho2, rho3})
        if (r) check_weight_positive(*r);

    const double beta_window = 0.5;  // only steers the spectral window
    auto slot = [](const FunctionExpr& F, const std::optional<FunctionExpr>& rho) {
        return rho ? product(F, *rho) : F;
    };
    const FunctionExpr a1 = slot(F1, rho1);
    const FunctionExpr a2 = slot(F2, rho2);
    const FunctionExpr a3 = slot(F3, rho3);

    auto fnorm = [&](const FunctionExpr& F, const std::optional<FunctionExpr>& rho) {
        return rho ? norm(F, NormSpec::custom(p, *rho), cfg) : norm(F, NormSpec::lp(p), cfg);
    };
    const double n1 = fnorm(F1, rho1), n2 = fnorm(F2, rho2), n3 = fnorm(F3, rho3);

    const PolyconvInput in{a1, a2, a3, beta_window};
    const Curve G = polyconv_spectral_curve(in, default_xgrid().points(), cfg);

    const double wstar = support_floor(a3);
    const double k0w = k0(wstar, cfg);
    const double em = 1.0 - 1.0 / p;

    if (missing == 0) {
        // full weighted inequality: pointwise composition with the weight
        // polyconvolution, computed once
        const PolyconvInput win{*rho1, *rho2, *rho3, beta_window};
        const Curve W = polyconv_spectral_curve(win, default_xgrid().points(), cfg);
        auto wval = [&W](double x) {
            const double w = W(x);
            if (std::fabs(w) < 1e-30)
                throw DivisionUnstableError(
                    "weight polyconvolution below 1e-30 at x = " + std::to_string(x));
            return w;
        };
        // lhs^p = integral |G|^p |W|^{1-p}, per-segment midpoint composite
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < G.xs.size(); ++i) {
            const double x0 = G.xs[i], x1 = G.xs[i + 1];
            const int m = 4;
            for (int j = 0; j < m; ++j) {
                const double x = x0 + (x1 - x0) * (j + 0.5) / m;
                const double g = G(x);
                if (g == 0.0) continue;
                acc += std::pow(std::fabs(g), p) * std::pow(std::fabs(wval(x)), 1.0 - p) *
                       (x1 - x0) / m;
            }
        }
        const double lhs = std::pow(acc, 1.0 / p);
        const double constant = std::pow(kRoot2OverPi * k0w, 1.0 / p);
        const double rhs = constant * n1 * n2 * n3;
        return InequalityReport::make(
            lhs, rhs, constant,
            "full weighted form; w* = " + std::to_string(wstar) +
                " (support infimum of the third slot), K0(w*) = " + std::to_string(k0w));
    }

    const double lhs = smooth_curve_lp_norm(G, p);
    double constant = 0.0;
    std::string which;
    if (!rho3) {
        const double m1 = norm(*rho1, NormSpec::lp(1.0), cfg);
        const double m2 = norm(*rho2, NormSpec::lp(1.0), cfg);
        constant = kRoot2OverPi * std::pow(kRoot2OverPi * k0w, 1.0 / p) *
                   std::pow(m1, em) * std::pow(m2, em);
        which = "C4 (rho3 = 1)";
    } else {
        const FunctionExpr& ra = rho1 ? *rho1 : *rho2;  // the two present weights
        const FunctionExpr& rb = *rho3;
        const double ma = norm(ra, NormSpec::lp(1.0), cfg);
        const double mb = norm(rb, NormSpec::lp(1.0), cfg);
        constant = kRoot2OverPi * k0w * std::pow(ma, em) * std::pow(mb, em);
        which = rho1 ? "C3 (rho2 = 1)" : "C3 (rho1 = 1)";
    }
    const double rhs = constant * n1 * n2 * n3;
    return InequalityReport::make(lhs, rhs, constant,
                                  which + "; w* = " + std::to_string(wstar) +
                                      ", K0(w*) = " + std::to_string(k0w));
}

} // namespace klpoly
