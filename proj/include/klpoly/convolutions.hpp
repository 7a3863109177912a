#ifndef KLPOLY_CONVOLUTIONS_HPP
#define KLPOLY_CONVOLUTIONS_HPP

#include "klpoly/reports.hpp"
#include "klpoly/transforms.hpp"

namespace klpoly {

// Triple entering the polyconvolution; f, g feed the Fourier sine/cosine
// slots, h the Kontorovich-Lebedev slot with weight parameter beta.
struct PolyconvInput {
    FunctionExpr f;
    FunctionExpr g;
    FunctionExpr h;
    double beta = 0.5;

    void validate() const;  // beta in (0, 1]
};

// Phi(x,u,v,w) = e^{-w cosh(x-u+v)} + e^{-w cosh(x-u-v)}
//             - e^{-w cosh(x+u+v)} - e^{-w cosh(x+u-v)}
// Vanishes identically at x = 0 and at u = 0.
double kernel_phi(double x, double u, double v, double w);

// (f *1 g)(x) = (2 pi)^{-1/2} integral of f(u) [g(|x-u|) - g(x+u)] du.
double sneddon_conv(const FunctionExpr& f, const FunctionExpr& g, double x,
                    const QuadratureConfig& cfg = {});

// (f *2 g)(x) = 1/2 double integral of
//   [e^{-u cosh(v-x)} - e^{-u cosh(v+x)}] f(v) g(u) du dv.
double yb_conv(const FunctionExpr& f, const FunctionExpr& g, double x,
               const QuadratureConfig& cfg = {});

// Route 1: direct triple quadrature of the kernel representation,
// innermost in w (fastest decay), then v, then u.
double polyconv_direct(const PolyconvInput& in, double x, const QuadratureConfig& cfg = {});

// Route 2: generalized Parseval form, spectra precomputed once.
struct PolySpectra {
    Curve fs;       // (F_s f)(y)
    Curve fc;       // (F_c g)(y)
    Curve kh;       // K[h](y)
    Curve product;  // pointwise product on the shared working nodes
};
PolySpectra polyconv_spectra(const PolyconvInput& in, const QuadratureConfig& cfg = {});
InvertResult polyconv_spectral_at(const PolySpectra& sp, double x,
                                  const QuadratureConfig& cfg = {});
SampledFunction polyconv_spectral(const PolyconvInput& in, const GridSpec& xgrid,
                                  const QuadratureConfig& cfg = {});
Curve polyconv_spectral_curve(const PolyconvInput& in, const std::vector<double>& xs,
                              const QuadratureConfig& cfg = {});

// Route 3: composition [(f *1 g) *2 h] through a tabulated intermediate.
GridSpec composition_grid();  // log-uniform [1e-3, 40], 400 points
FunctionExpr sneddon_curve_expr(const FunctionExpr& f, const FunctionExpr& g,
                                const QuadratureConfig& cfg = {},
                                const GridSpec& grid = composition_grid());
double polyconv_composed(const PolyconvInput& in, double x, const QuadratureConfig& cfg = {});
Curve polyconv_composed_curve(const PolyconvInput& in, const std::vector<double>& xs,
                              const QuadratureConfig& cfg = {});

// Kernel-bound audits: I1..I3 (integrating |Phi| in x, u, v) against
// 4 K0(w); I4 (integrating in w) against 4 sech(t_min) where cosh(t_min)
// is the smallest of the four cosh arguments.
enum class KernelBoundKind { i1_dx, i2_du, i3_dv, i4_dw };

// For i1_dx the fixed coordinates are (u, v, w); for i2_du (x, v, w);
// for i3_dv (x, u, w); for i4_dw (x, u, v).
InequalityReport kernel_bound_audit(KernelBoundKind kind, double c1, double c2, double c3,
                                    const QuadratureConfig& cfg = {});

} // namespace klpoly

#endif
