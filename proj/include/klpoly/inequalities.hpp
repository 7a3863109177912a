#ifndef KLPOLY_INEQUALITIES_HPP
#define KLPOLY_INEQUALITIES_HPP

#include <optional>

#include "klpoly/convolutions.hpp"

namespace klpoly {

// Exponent tuples with their linkage checked at construction.
struct ExponentTuple {
    double p = 1.0, q = 1.0, r = 1.0, s = 1.0;

    // 1/p + 1/q + 1/r + 1/s = 3, all in (1, inf)
    static ExponentTuple young(double p, double q, double r, double s);
    // 1/p + 1/q + 1/r = 2 + 1/s, all in [1, inf)
    static ExponentTuple young_norm(double p, double q, double r, double s);
    // 1/p + 1/q + 1/r = 2, all in (1, inf); s plays no role
    static ExponentTuple sup_form(double p, double q, double r);
};

// C1 = sqrt(2/pi) (sech t)^{1 - 1/r}; the audit uses the uniform bound
// sech t <= 1 since t is a bound variable of the kernel lemma, so the
// default is simply sqrt(2/pi).
double constant_c1(double r, double sech_t = 1.0);

// C2 = C1 * [(1/g1) b1^{-(a1+1)/g1} Gamma((a1+1)/g1)]^{1/s}
// (exponent per Gradshteyn 3.381.4).
double constant_c2(double r, double s, double alpha1, double beta1, double gamma1,
                   double sech_t = 1.0);

// Optional precomputed spectral curve of the triple on the default x-grid;
// the four audits of one triple share it.
struct PolyCurveCache {
    Curve poly;
};
PolyCurveCache make_poly_cache(const FunctionExpr& f, const FunctionExpr& g,
                               const FunctionExpr& h, double beta,
                               const QuadratureConfig& cfg = {});

// |int poly(f,g,h) k dx| <= C1 ||f||_p ||g||_q ||h||_{L_r^{0,beta}} ||k||_s;
// the ||k||_s factor keeps the bound scale-consistent in k.
InequalityReport young_audit(const FunctionExpr& f, const FunctionExpr& g,
                             const FunctionExpr& h, const FunctionExpr& k,
                             const ExponentTuple& exps, double beta,
                             const QuadratureConfig& cfg = {},
                             const PolyCurveCache* cache = nullptr);

// ||poly||_s <= C1 ||f||_p ||g||_q ||h||_{L_r^{0,beta}}.
InequalityReport young_norm_audit(const FunctionExpr& f, const FunctionExpr& g,
                                  const FunctionExpr& h, const ExponentTuple& exps,
                                  double beta, const QuadratureConfig& cfg = {},
                                  const PolyCurveCache* cache = nullptr);

// sup |poly| <= C1 ||f||_p ||g||_q ||h||_{L_r^{0,beta}}, 1/p+1/q+1/r = 2.
InequalityReport linfty_audit(const FunctionExpr& f, const FunctionExpr& g,
                              const FunctionExpr& h, double p, double q, double r,
                              double beta, const QuadratureConfig& cfg = {},
                              const PolyCurveCache* cache = nullptr);

// ||poly||_{L_s^{a1,b1,g1}} <= C2 ||f||_p ||g||_q ||h||_{L_r^{0,beta}}.
InequalityReport threeparam_audit(const FunctionExpr& f, const FunctionExpr& g,
                                  const FunctionExpr& h, double p, double q, double r,
                                  double s, double alpha1, double beta1, double gamma1,
                                  double beta, const QuadratureConfig& cfg = {},
                                  const PolyCurveCache* cache = nullptr);

// Saitoh-type weighted audit.  A disengaged optional means that weight is
// identically 1 and triggers the matching degenerate corollary (rho1 -> C3
// form, rho3 -> C4 form); with all three weights present the full
// inequality with constant (sqrt(2/pi) K0(w*))^{1/p} is checked, w* being
// the grid infimum of the third slot's support.
InequalityReport saitoh_audit(const FunctionExpr& F1, const FunctionExpr& F2,
                              const FunctionExpr& F3,
                              const std::optional<FunctionExpr>& rho1,
                              const std::optional<FunctionExpr>& rho2,
                              const std::optional<FunctionExpr>& rho3, double p,
                              const QuadratureConfig& cfg = {});

} // namespace klpoly

#endif
