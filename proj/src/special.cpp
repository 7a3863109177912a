#include "klpoly/special.hpp"

#include <cmath>
#include <string>

namespace klpoly {

namespace {

// Lanczos coefficients, g = 7, n = 9.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7};

double gamma_positive(double x) {
    if (x < 0.5) {
        // reflection keeps the Lanczos series in its accurate range
        return M_PI / (std::sin(M_PI * x) * gamma_positive(1.0 - x));
    }
    x -= 1.0;
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (x + i);
    const double t = x + 7.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, x + 0.5) * std::exp(-t) * acc;
}

} // namespace

double k0(double x, const QuadratureConfig& cfg) {
    if (!(x > 0)) throw DomainError("k0 requires x > 0 (the integral diverges at 0)");
    const DecayEnvelope env = DecayEnvelope::cosh_exponential(x);
    auto f = [x](double t) { return exp_floored(-x * std::cosh(t)); };
    return integrate_semi_infinite(f, 0.0, env, cfg).value;
}

double macdonald_iy(double y, double x, const QuadratureConfig& cfg) {
    if (!(x > 0)) throw DomainError("macdonald_iy requires x > 0");
    if (!(y >= 0)) throw DomainError("macdonald_iy requires y >= 0");
    const DecayEnvelope env = DecayEnvelope::cosh_exponential(x);
    auto f = [x](double t) { return exp_floored(-x * std::cosh(t)); };
    return integrate_oscillatory(f, y, TrigKind::cosine, env, cfg).value;
}

double gamma_fn(double x) {
    if (!(x > 0)) throw DomainError("gamma_fn requires x > 0");
    return gamma_positive(x);
}

double sech(double t) {
    const double a = std::fabs(t);
    const double e = std::exp(-a);
    return 2.0 * e / (1.0 + e * e);
}

double kiy_exponential_bound(double y, double x, double beta,
                             const QuadratureConfig& cfg) {
    if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("beta must lie in (0, 1]");
    return exp_floored(-y * std::acos(beta)) * k0(beta * x, cfg);
}

double k0_upper_bound(double z) {
    if (!(z > 0)) throw DomainError("k0_upper_bound requires z > 0");
    return std::sqrt(M_PI / (2.0 * z)) * exp_floored(-z);
}

MacdonaldEval macdonald_eval(double y, double x, const QuadratureConfig& cfg) {
    return MacdonaldEval{x, y, macdonald_iy(y, x, cfg)};
}

} // namespace klpoly
