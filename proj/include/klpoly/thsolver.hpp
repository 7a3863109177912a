#ifndef KLPOLY_THSOLVER_HPP
#define KLPOLY_THSOLVER_HPP

#include <optional>
#include <utility>

#include "klpoly/inequalities.hpp"
#include "klpoly/reports.hpp"

namespace klpoly {

// (F_c ell)(y) = (F_c phi)(y) / (1 + (F_c phi)(y)) on the requested grid.
// Throws SingularSymbolError when |1 + F_c phi| falls below delta anywhere
// on the grid (the computable form of the solvability condition).
SampledFunction resolvent_symbol(const FunctionExpr& phi, const GridSpec& ygrid,
                                 const QuadratureConfig& cfg = {}, double delta = 1e-8);

// Working-window variant used by the solver pipeline.
Curve resolvent_symbol_curve(const FunctionExpr& phi, double ymax,
                             const QuadratureConfig& cfg = {}, double delta = 1e-8);

// ell(x) = sqrt(2/pi) integral of (F_c ell)(y) cos(xy) dy (the cosine
// transform is its own inverse).
Curve recover_ell_curve(const Curve& ell_spectrum, const std::vector<double>& xs,
                        const QuadratureConfig& cfg = {});
SampledFunction recover_ell(const SampledFunction& ell_spectrum, const GridSpec& xgrid,
                            const QuadratureConfig& cfg = {});

// Solves f + (f *1 phi) = poly(xi, phi, h) spectrally:
//   f(x) = sqrt(2/pi) integral of (F_s xi)(F_c ell)(K h) sin(xy) dy,
// then verifies the equation by substitution with deliberately different
// pipelines (direct Sneddon quadrature against the spectral right side).
SolveReport solve_th(const FunctionExpr& xi, const FunctionExpr& phi, const FunctionExpr& h,
                     double beta, const GridSpec& xgrid, const QuadratureConfig& cfg = {},
                     double delta = 1e-8, bool want_ell = true);

// (Linf-on-grid, L1-on-grid) norms of f + (f *1 phi) - poly(xi, phi, h).
std::pair<double, double> residual_check(const SampledFunction& f, const FunctionExpr& phi,
                                         const FunctionExpr& xi, const FunctionExpr& h,
                                         double beta, const QuadratureConfig& cfg = {});

// A-priori norm estimate for the computed solution f = poly(xi, ell, h)
// under the norm linkage (s = inf switches to the sup form).
InequalityReport solution_norm_estimate(const FunctionExpr& xi, const FunctionExpr& ell,
                                const FunctionExpr& h, const ExponentTuple& exps,
                                double beta, const QuadratureConfig& cfg = {});

// Weighted-space variant: boundedness through the C3 form with
// ell = ell1 rho2 and h = h1 rho3.
InequalityReport solution_weighted_estimate(const FunctionExpr& xi, const FunctionExpr& ell1,
                                  const FunctionExpr& rho2, const FunctionExpr& h1,
                                  const FunctionExpr& rho3, double p,
                                  const QuadratureConfig& cfg = {});

} // namespace klpoly

#endif
