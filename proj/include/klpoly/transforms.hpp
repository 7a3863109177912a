#ifndef KLPOLY_TRANSFORMS_HPP
#define KLPOLY_TRANSFORMS_HPP

#include "klpoly/funcmodel.hpp"

namespace klpoly {

struct TransformResult {
    SampledFunction spectrum;      // on the requested y-grid
    double max_error_estimate = 0.0;
};

// Shared evaluation grids: identity checks compare spectra on the default
// y-grid; dense x-space evaluations (norms, suprema, composition) use the
// default x-grid.
GridSpec default_ygrid();   // uniform [0.05, 8], 160 points
GridSpec default_xgrid();   // log-uniform [1e-3, 40], 400 points

// Point evaluations sqrt(2/pi) * integral of f(x) trig(xy) dx.
double fourier_sine_at(const FunctionExpr& f, double y, const QuadratureConfig& cfg = {});
double fourier_cosine_at(const FunctionExpr& f, double y, const QuadratureConfig& cfg = {});

TransformResult fourier_sine(const FunctionExpr& f, const GridSpec& ygrid,
                             const QuadratureConfig& cfg = {});
TransformResult fourier_cosine(const FunctionExpr& f, const GridSpec& ygrid,
                               const QuadratureConfig& cfg = {});

// K[h](y) = integral over [lower_cut, inf) of K_iy(x) h(x) dx; the cut
// realizes the 1/N -> 0 limit of the L2 definition.
double kl_transform_at(const FunctionExpr& h, double y, const QuadratureConfig& cfg = {},
                       double lower_cut = 1e-6);

TransformResult kl_transform(const FunctionExpr& h, const GridSpec& ygrid,
                             const QuadratureConfig& cfg = {}, double lower_cut = 1e-6);

// ---- spectral working curves (internal pipelines; spectra as Curve) ----

// Composite node set reaching down to y = 0.005 and up to ymax; finer than
// the default y-grid so interpolation error stays far below check tolerances.
std::vector<double> working_ynodes(double ymax);

Curve trig_spectrum_curve(const FunctionExpr& f, TrigKind kind, double ymax,
                          const QuadratureConfig& cfg = {});
Curve kl_spectrum_curve(const FunctionExpr& h, double ymax,
                        const QuadratureConfig& cfg = {}, double lower_cut = 1e-6);

// Window beyond which |K[h](y)| <= e^{-y arccos beta} ||h||_{L1^{0,beta}}
// is below `target`.
double kl_window(const FunctionExpr& h, double beta, double target,
                 const QuadratureConfig& cfg = {});

// Exact integral of the piecewise-linear curve times trig(freq x) over
// [0, back]; below the first node the curve continues with its first value
// (constant) or ramps linearly from zero, matching the two extension
// conventions used for function curves and sine spectra respectively.
enum class BelowLo { constant, ramp_to_zero };
double curve_trig_integral(const Curve& c, double freq, TrigKind kind,
                           BelowLo below = BelowLo::constant);

// Same integral but treating the curve as samples of a smooth function
// (cubic Hermite through the nodes); used for internally generated
// spectrum curves, where the pw-linear reading would waste accuracy.
double smooth_curve_trig_integral(const Curve& c, double freq, TrigKind kind,
                                  BelowLo below = BelowLo::constant);

// sqrt(2/pi) * integral over [0, inf) of S(y) trig(xy) dy for a spectrum
// curve S.  The part beyond the curve window is handled by a fitted
// rational tail model (c y/(b+y^2) for sine, c/(b+y^2) for cosine) whose
// trig integrals have closed forms; the residual enters error_estimate.
struct InvertResult {
    double value = 0.0;
    double error_estimate = 0.0;
};
InvertResult invert_trig_curve(const Curve& S, double x, TrigKind kind,
                               const QuadratureConfig& cfg = {});

// ---- curve norms (dense-grid L_p machinery shared by the audits) ----

double curve_integral(const Curve& c);        // signed, constant-extended below lo
double curve_abs_integral(const Curve& c);
double curve_lp_norm(const Curve& c, double p);
double curve_lp_norm_weighted(const Curve& c, double p,
                              const std::function<double(double)>& weight);
double curve_sup(const Curve& c);

// Cubic-Hermite readings of internally generated smooth curves.
double smooth_curve_lp_norm(const Curve& c, double p);
double smooth_curve_lp_norm_weighted(const Curve& c, double p,
                                     const std::function<double(double)>& weight);

} // namespace klpoly

#endif
