#ifndef KLPOLY_WATSON_HPP
#define KLPOLY_WATSON_HPP

#include "klpoly/convolutions.hpp"

namespace klpoly {

// Theta(y) = (1 + y^2) (F_c g0)(y) K[h0](y), sampled on the spectral
// working nodes.  It may also be constructed directly (identity) to
// exercise the operator algebra of the unitary case, which no concrete
// (g0, h0) pair in the test family satisfies.
struct MultiplierTheta {
    Curve values;
    double sup_abs = 0.0;

    static MultiplierTheta identity(double ymax = 300.0);  // Theta == 1
};

struct WatsonPair {
    FunctionExpr g0;
    FunctionExpr h0;
    double beta = 0.5;  // in (0, 1)

    void validate() const;
};

MultiplierTheta theta_multiplier(const WatsonPair& pair, const QuadratureConfig& cfg = {});

// Unitarity condition: | |F_c g0 (y) K[h0](y)| - 1/(1+y^2) | <= tol on the
// grid.  lhs is the max deviation, rhs the tolerance; a failed check is a
// valid report, not an error.
InequalityReport check_condition_unitary(const MultiplierTheta& theta, double tol);
InequalityReport check_condition_unitary(const WatsonPair& pair, double tol,
                                         const QuadratureConfig& cfg = {});

// phi(x) = sqrt(2/pi) integral of Theta(y) (F_s f)(y) sin(xy) dy.
Curve watson_apply_curve(const FunctionExpr& f, const MultiplierTheta& theta,
                         const std::vector<double>& xs, const QuadratureConfig& cfg = {});
SampledFunction watson_apply_spectral(const FunctionExpr& f, const MultiplierTheta& theta,
                                      const GridSpec& xgrid, const QuadratureConfig& cfg = {});
SampledFunction watson_apply_spectral(const FunctionExpr& f, const WatsonPair& pair,
                                      const GridSpec& xgrid, const QuadratureConfig& cfg = {});

// (1 - d^2/dx^2) applied through a second-order difference of the direct
// polyconvolution; one-sided stencil below x = fd_step.  When diag is
// given, the stencil is repeated at fd_step/2 and fd_step/4 and the
// Richardson ratio is recorded per grid point.
struct FdDiagnostic {
    std::vector<double> richardson_error;  // |D2(d) - D2(d/2)| * 4/3
    std::vector<double> shrink_ratio;      // ~4 for clean second-order behavior
};
SampledFunction watson_apply_direct(const FunctionExpr& f, const WatsonPair& pair,
                                    const GridSpec& xgrid, double fd_step = 1e-2,
                                    const QuadratureConfig& cfg = {},
                                    FdDiagnostic* diag = nullptr);

// Inverse through the division form of the multiplier, available only when
// the unitarity check passes within cond_tol.  phi enters as grid samples.
SampledFunction watson_inverse(const SampledFunction& phi, const MultiplierTheta& theta,
                               const GridSpec& xgrid, const QuadratureConfig& cfg = {},
                               double cond_tol = 1e-6);

Curve watson_inverse_curve(const Curve& phi, const MultiplierTheta& theta,
                           const std::vector<double>& xs, const QuadratureConfig& cfg = {},
                           double cond_tol = 1e-6);

// ||phi_N - phi||_2 for f^N = f X_[0,N]; the sequence decreases to 0 as the
// truncations exhaust f.
std::vector<double> plancherel_sequence(const FunctionExpr& f, const MultiplierTheta& theta,
                                        const std::vector<double>& n_list,
                                        const QuadratureConfig& cfg = {});
std::vector<double> plancherel_sequence(const FunctionExpr& f, const WatsonPair& pair,
                                        const std::vector<double>& n_list,
                                        const QuadratureConfig& cfg = {});

// sup_x |T f| <= M ||f||_1 with M = sqrt(2/pi) * sup|F_s f|/||f||_1 bound
// times the Theta mass: M = (2/pi) integral |Theta|.
InequalityReport l1_linfty_bound_audit(const FunctionExpr& f, const WatsonPair& pair,
                                       const QuadratureConfig& cfg = {});

} // namespace klpoly

#endif
