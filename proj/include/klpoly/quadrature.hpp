#ifndef KLPOLY_QUADRATURE_HPP
#define KLPOLY_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "klpoly/errors.hpp"

namespace klpoly {

// Tolerances and truncation policy shared by every integral in the engine.
struct QuadratureConfig {
    double abs_tol = 1e-10;          // absolute error target
    double rel_tol = 1e-8;           // relative error target
    int max_refinement = 26;         // panel bisection depth cap
    double tail_epsilon = 1e-12;     // truncation threshold for decaying tails
    int min_nodes_per_period = 10;   // oscillatory resolution

    void validate() const;           // throws DomainError on a bad field
};

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;     // internal convergence gap, >= 0
    double truncation_point = 0.0;   // upper limit actually integrated to
};

// Decay information for a semi-infinite integrand: a monotone pointwise
// envelope together with an analytic bound on its tail mass.  The tail
// bound is what truncation decisions consume; it must be non-increasing.
struct DecayEnvelope {
    std::function<double(double)> pointwise;   // |f(t)| <= pointwise(t) eventually
    std::function<double(double)> tail_mass;   // >= integral of pointwise over [T, inf)

    static DecayEnvelope exponential(double coef, double rate);
    static DecayEnvelope gaussian(double coef, double rate);     // coef * e^{-rate t^2}
    static DecayEnvelope compact(double t_end);                  // vanishes beyond t_end
    static DecayEnvelope cosh_exponential(double w);             // e^{-w cosh t}
    // Envelope of a product: this(t) * coef * e^{-rate t}.
    DecayEnvelope damped(double coef, double rate) const;
    DecayEnvelope scaled(double coef) const;
};

enum class TrigKind { sine, cosine };

// Smallest T (within bisection resolution) with tail_mass(T) < tail_epsilon.
// Throws TailNotResolvableError if no such T exists below `ceiling`.
double choose_truncation(const DecayEnvelope& env, double tail_epsilon,
                         double a = 0.0, double ceiling = 1e6);

// Adaptive Gauss(7)-Kronrod(15) panels with bisection refinement.
IntegralResult integrate_finite(const std::function<double(double)>& f,
                                double a, double b, const QuadratureConfig& cfg);

// Same, with known kinks/jumps that seed the initial panel boundaries.
IntegralResult integrate_finite(const std::function<double(double)>& f,
                                double a, double b, const QuadratureConfig& cfg,
                                const std::vector<double>& breakpoints);

// Truncates [a, inf) at T with env.tail_mass(T) < tail_epsilon, then
// delegates to integrate_finite on [a, T].
IntegralResult integrate_semi_infinite(const std::function<double(double)>& f,
                                       double a, const DecayEnvelope& env,
                                       const QuadratureConfig& cfg);

IntegralResult integrate_semi_infinite(const std::function<double(double)>& f,
                                       double a, const DecayEnvelope& env,
                                       const QuadratureConfig& cfg,
                                       const std::vector<double>& breakpoints);

// integral over [a, inf) of f(t) * sin(freq t)  (or cos).  Panels are sized
// so each period 2*pi/freq receives at least cfg.min_nodes_per_period nodes.
// freq == 0 with sine returns exactly 0.
IntegralResult integrate_oscillatory(const std::function<double(double)>& f,
                                     double freq, TrigKind kind,
                                     const DecayEnvelope& env,
                                     const QuadratureConfig& cfg,
                                     double a = 0.0,
                                     const std::vector<double>& breakpoints = {});

// Fixed tanh-sinh rule on [a, b] with nested level refinement; tolerates
// integrable endpoint singularities (x^alpha with alpha > -1, log).
double tanh_sinh_finite(const std::function<double(double)>& f,
                        double a, double b,
                        double abs_tol = 1e-12, double rel_tol = 1e-10,
                        int max_level = 12);

// Exponent floor: exp(e) for e below the smallest-normal threshold is 0.
double exp_floored(double e);

} // namespace klpoly

#endif
