#include "klpoly/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

namespace klpoly {

namespace {

// 15-point Kronrod extension of the 7-point Gauss-Legendre rule
// (QUADPACK qk15 abscissae/weights, positive half).
constexpr int kHalf = 8;
constexpr double kXgk[kHalf] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kWgk[kHalf] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct PanelValue {
    double k15 = 0.0;
    double g7 = 0.0;
    double abs15 = 0.0;  // Kronrod sum of |f|, used for noise floors
};

PanelValue eval_gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    if (!std::isfinite(fc))
        throw NonFiniteError("integrand returned a non-finite value at x = " + std::to_string(c));
    PanelValue r;
    r.k15 = kWgk[7] * fc;
    r.g7 = kWg[3] * fc;
    r.abs15 = kWgk[7] * std::fabs(fc);
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kXgk[i];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        if (!std::isfinite(f1) || !std::isfinite(f2))
            throw NonFiniteError("integrand returned a non-finite value near x = " +
                                 std::to_string(c));
        const double s = f1 + f2;
        r.k15 += kWgk[i] * s;
        r.abs15 += kWgk[i] * (std::fabs(f1) + std::fabs(f2));
        if (i % 2 == 1) r.g7 += kWg[i / 2] * s;
    }
    r.k15 *= h;
    r.g7 *= h;
    r.abs15 *= h;
    return r;
}

struct Panel {
    double a, b;
    double value;   // Kronrod estimate
    double err;     // |K15 - G7|
    double absv;
    int depth;
};

struct PanelWorse {
    bool operator()(const Panel& x, const Panel& y) const {
        if (x.err != y.err) return x.err < y.err;  // max-heap on err
        if (x.a != y.a) return x.a > y.a;          // deterministic tie-break
        return x.b > y.b;
    }
};

Panel make_panel(const std::function<double(double)>& f, double a, double b, int depth) {
    const PanelValue pv = eval_gk15(f, a, b);
    return Panel{a, b, pv.k15, std::fabs(pv.k15 - pv.g7), pv.abs15, depth};
}

constexpr std::size_t kPanelBudget = 200000;

IntegralResult adaptive_panels(const std::function<double(double)>& f,
                               const std::vector<double>& bounds,
                               const QuadratureConfig& cfg) {
    std::priority_queue<Panel, std::vector<Panel>, PanelWorse> heap;
    double sum = 0.0, err = 0.0, absum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        if (bounds[i + 1] <= bounds[i]) continue;
        Panel p = make_panel(f, bounds[i], bounds[i + 1], 0);
        sum += p.value;
        err += p.err;
        absum += p.absv;
        heap.push(p);
        ++count;
    }
    const double eps = std::numeric_limits<double>::epsilon();
    while (!heap.empty()) {
        const double tol = std::max({cfg.abs_tol, cfg.rel_tol * std::fabs(sum),
                                     50.0 * eps * absum});
        if (err <= tol) break;
        Panel p = heap.top();
        heap.pop();
        if (p.depth >= cfg.max_refinement)
            throw NonConvergenceError("refinement cap reached on panel [" +
                                      std::to_string(p.a) + ", " + std::to_string(p.b) +
                                      "] with error " + std::to_string(p.err));
        if (count >= kPanelBudget)
            throw NonConvergenceError("panel budget exhausted before tolerance");
        const double m = 0.5 * (p.a + p.b);
        if (!(m > p.a && m < p.b))
            throw NonConvergenceError("panel too narrow to bisect at x = " +
                                      std::to_string(p.a));
        sum -= p.value;
        err -= p.err;
        absum -= p.absv;
        Panel l = make_panel(f, p.a, m, p.depth + 1);
        Panel r = make_panel(f, m, p.b, p.depth + 1);
        sum += l.value + r.value;
        err += l.err + r.err;
        absum += l.absv + r.absv;
        heap.push(l);
        heap.push(r);
        ++count;
    }
    IntegralResult res;
    res.value = sum;
    res.error_estimate = err;
    res.truncation_point = bounds.empty() ? 0.0 : bounds.back();
    return res;
}

// Seed boundaries: sorted unique breakpoints inside (a, b), each resulting
// piece capped at max_width, total capped so pathological inputs stay sane.
std::vector<double> seed_bounds(double a, double b,
                                const std::vector<double>& breakpoints,
                                double max_width) {
    std::vector<double> cuts;
    cuts.push_back(a);
    std::vector<double> bp = breakpoints;
    std::sort(bp.begin(), bp.end());
    for (double x : bp)
        if (x > a && x < b && (cuts.empty() || x > cuts.back())) cuts.push_back(x);
    cuts.push_back(b);

    std::vector<double> out;
    out.push_back(a);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double len = cuts[i + 1] - cuts[i];
        if (len <= 0) continue;
        int parts = (max_width > 0) ? static_cast<int>(std::ceil(len / max_width)) : 1;
        parts = std::clamp(parts, 1, 65536);
        for (int j = 1; j <= parts; ++j)
            out.push_back(cuts[i] + len * static_cast<double>(j) / parts);
    }
    return out;
}

} // namespace

void QuadratureConfig::validate() const {
    if (!(abs_tol > 0) || !(rel_tol > 0))
        throw DomainError("quadrature tolerances must be positive");
    if (max_refinement < 1)
        throw DomainError("max_refinement must be >= 1");
    if (!(tail_epsilon > 0))
        throw DomainError("tail_epsilon must be positive");
    if (min_nodes_per_period < 4)
        throw DomainError("min_nodes_per_period must be >= 4");
}

double exp_floored(double e) {
    // keep clear of subnormals; ln(DBL_MIN) ~ -708.4
    return (e < -708.0) ? 0.0 : std::exp(e);
}

DecayEnvelope DecayEnvelope::exponential(double coef, double rate) {
    if (!(rate > 0)) throw DomainError("exponential envelope needs rate > 0");
    return DecayEnvelope{
        [coef, rate](double t) { return coef * exp_floored(-rate * t); },
        [coef, rate](double t) { return coef * exp_floored(-rate * t) / rate; }};
}

DecayEnvelope DecayEnvelope::gaussian(double coef, double rate) {
    if (!(rate > 0)) throw DomainError("gaussian envelope needs rate > 0");
    return DecayEnvelope{
        [coef, rate](double t) { return coef * exp_floored(-rate * t * t); },
        [coef, rate](double t) {
            // integral_T^inf e^{-r t^2} dt <= e^{-r T^2} / (2 r T) for T > 0
            if (t <= 0.5) return coef * (0.5 - t) + coef * exp_floored(-rate * 0.25) / rate;
            return coef * exp_floored(-rate * t * t) / (2.0 * rate * t);
        }};
}

DecayEnvelope DecayEnvelope::compact(double t_end) {
    return DecayEnvelope{
        [t_end](double t) { return t < t_end ? 1.0 : 0.0; },
        [t_end](double t) { return t < t_end ? (t_end - t) : 0.0; }};
}

DecayEnvelope DecayEnvelope::cosh_exponential(double w) {
    if (!(w > 0)) throw DomainError("cosh envelope needs w > 0");
    return DecayEnvelope{
        [w](double t) { return exp_floored(-w * std::cosh(t)); },
        [w](double t) {
            // convexity: cosh(s) >= cosh(T) + sinh(T)(s - T) for s >= T
            const double T = std::max(t, 0.6);
            double tail = exp_floored(-w * std::cosh(T)) / (w * std::sinh(T));
            if (t < 0.6) tail += (0.6 - t) * exp_floored(-w * std::cosh(t));
            return tail;
        }};
}

DecayEnvelope DecayEnvelope::damped(double coef, double rate) const {
    const DecayEnvelope base = *this;
    return DecayEnvelope{
        [base, coef, rate](double t) {
            return coef * exp_floored(-rate * t) * base.pointwise(t);
        },
        [base, coef, rate](double t) {
            return coef * exp_floored(-rate * t) * base.tail_mass(t);
        }};
}

DecayEnvelope DecayEnvelope::scaled(double coef) const {
    const DecayEnvelope base = *this;
    return DecayEnvelope{
        [base, coef](double t) { return coef * base.pointwise(t); },
        [base, coef](double t) { return coef * base.tail_mass(t); }};
}

double choose_truncation(const DecayEnvelope& env, double tail_epsilon,
                         double a, double ceiling) {
    if (!(tail_epsilon > 0)) throw DomainError("tail_epsilon must be positive");
    const double at_a = env.tail_mass(a);
    if (at_a < tail_epsilon) return a;
    double lo = a;
    double hi = a + 1.0;
    bool found = false;
    while (hi <= ceiling) {
        if (env.tail_mass(hi) < tail_epsilon) {
            found = true;
            break;
        }
        lo = hi;
        hi = a + 2.0 * (hi - a);
    }
    if (!found) {
        if (env.tail_mass(ceiling) < tail_epsilon) {
            hi = ceiling;
        } else {
            throw TailNotResolvableError("decay envelope tail stays above tail_epsilon up to " +
                                         std::to_string(ceiling));
        }
    }
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (env.tail_mass(mid) < tail_epsilon)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

IntegralResult integrate_finite(const std::function<double(double)>& f,
                                double a, double b, const QuadratureConfig& cfg) {
    return integrate_finite(f, a, b, cfg, {});
}

IntegralResult integrate_finite(const std::function<double(double)>& f,
                                double a, double b, const QuadratureConfig& cfg,
                                const std::vector<double>& breakpoints) {
    cfg.validate();
    if (!(a <= b)) throw DomainError("integrate_finite requires a <= b");
    if (a == b) return IntegralResult{0.0, 0.0, b};
    const std::vector<double> bounds = seed_bounds(a, b, breakpoints, 4.0);
    return adaptive_panels(f, bounds, cfg);
}

IntegralResult integrate_semi_infinite(const std::function<double(double)>& f,
                                       double a, const DecayEnvelope& env,
                                       const QuadratureConfig& cfg) {
    return integrate_semi_infinite(f, a, env, cfg, {});
}

IntegralResult integrate_semi_infinite(const std::function<double(double)>& f,
                                       double a, const DecayEnvelope& env,
                                       const QuadratureConfig& cfg,
                                       const std::vector<double>& breakpoints) {
    cfg.validate();
    if (!(a >= 0)) throw DomainError("integrate_semi_infinite requires a >= 0");
    const double T = choose_truncation(env, cfg.tail_epsilon, a);
    if (T <= a) return IntegralResult{0.0, env.tail_mass(a), a};
    IntegralResult r = integrate_finite(f, a, T, cfg, breakpoints);
    r.error_estimate += env.tail_mass(T);
    r.truncation_point = T;
    return r;
}

IntegralResult integrate_oscillatory(const std::function<double(double)>& f,
                                     double freq, TrigKind kind,
                                     const DecayEnvelope& env,
                                     const QuadratureConfig& cfg,
                                     double a,
                                     const std::vector<double>& breakpoints) {
    cfg.validate();
    if (!(freq >= 0)) throw DomainError("integrate_oscillatory requires freq >= 0");
    if (freq == 0.0) {
        if (kind == TrigKind::sine) return IntegralResult{0.0, 0.0, a};
        return integrate_semi_infinite(f, a, env, cfg, breakpoints);
    }
    const double T = choose_truncation(env, cfg.tail_epsilon, a);
    if (T <= a) return IntegralResult{0.0, env.tail_mass(a), a};
    auto g = [&f, freq, kind](double t) {
        const double tr = (kind == TrigKind::sine) ? std::sin(freq * t) : std::cos(freq * t);
        return f(t) * tr;
    };
    const double per_panel = (2.0 * M_PI / freq) * (15.0 / cfg.min_nodes_per_period);
    const double width = std::min(4.0, per_panel);
    const std::vector<double> bounds = seed_bounds(a, T, breakpoints, width);
    IntegralResult r = adaptive_panels(g, bounds, cfg);
    r.error_estimate += env.tail_mass(T);
    r.truncation_point = T;
    return r;
}

double tanh_sinh_finite(const std::function<double(double)>& f,
                        double a, double b,
                        double abs_tol, double rel_tol, int max_level) {
    if (!(a < b)) return 0.0;
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double half_pi = 0.5 * M_PI;

    auto level_sum = [&](double d) {
        double s = 0.0;
        for (int k = 0;; ++k) {
            const double u = k * d;
            const double sh = half_pi * std::sinh(u);
            // distance of the symmetric node pair from its nearest endpoint,
            // computed without cancellation: h (1 - tanh sh) = 2h/(e^{2 sh}+1)
            const double dist = 2.0 * h / (std::exp(2.0 * sh) + 1.0);
            const double w = half_pi * std::cosh(u) / std::pow(std::cosh(sh), 2);
            if (dist <= 0.0 || w < 1e-290) break;
            const double xl = a + dist;
            const double xr = b - dist;
            double term;
            if (k == 0) {
                term = w * f(c);
            } else {
                term = w * (f(xl) + (xr > xl ? f(xr) : 0.0));
            }
            if (!std::isfinite(term))
                throw NonFiniteError("tanh-sinh integrand non-finite near an endpoint");
            s += term;
            if (k > 100000) break;
        }
        return s * d * h;
    };

    double prev = level_sum(1.0);
    for (int level = 1; level <= max_level; ++level) {
        const double d = std::pow(0.5, level);
        const double cur = level_sum(d);
        if (std::fabs(cur - prev) <= std::max(abs_tol, rel_tol * std::fabs(cur)))
            return cur;
        prev = cur;
    }
    return prev;
}

} // namespace klpoly
