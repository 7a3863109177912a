#ifndef KLPOLY_SPECIAL_HPP
#define KLPOLY_SPECIAL_HPP

#include "klpoly/quadrature.hpp"

namespace klpoly {

// K0(x) = integral over [0, inf) of e^{-x cosh t} dt, x > 0.
double k0(double x, const QuadratureConfig& cfg = {});

// K_{iy}(x) = integral over [0, inf) of e^{-x cosh t} cos(yt) dt,
// the Macdonald function of imaginary order.  x > 0, y >= 0.
double macdonald_iy(double y, double x, const QuadratureConfig& cfg = {});

// Euler gamma function for x > 0 (Lanczos approximation, |rel err| < 1e-12).
double gamma_fn(double x);

// sech t = 1 / cosh t, overflow-safe.
double sech(double t);

// Exponential-order bound e^{-y arccos(beta)} K0(beta x) for |K_iy(x)|,
// beta in (0, 1].
double kiy_exponential_bound(double y, double x, double beta,
                             const QuadratureConfig& cfg = {});

// Closed upper bound K0(z) <= sqrt(pi/(2z)) e^{-z}; used by tail analysis.
double k0_upper_bound(double z);

// One recorded Macdonald evaluation; value always satisfies |value| <= K0(x).
struct MacdonaldEval {
    double x;
    double y;
    double value;
};

MacdonaldEval macdonald_eval(double y, double x, const QuadratureConfig& cfg = {});

} // namespace klpoly

#endif
