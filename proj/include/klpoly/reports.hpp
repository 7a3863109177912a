#ifndef KLPOLY_REPORTS_HPP
#define KLPOLY_REPORTS_HPP

#include <string>

#include "klpoly/funcmodel.hpp"

namespace klpoly {

// Structured verdict of one numerical inequality check.
struct InequalityReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double constant_used = 0.0;  // the bound constant entering rhs
    double margin = 0.0;         // rhs - lhs
    bool pass = false;
    std::string detail;          // provenance of each factor

    static InequalityReport make(double lhs, double rhs, double constant,
                                 std::string detail, double tol = 1e-9);
};

// Verdict of one Toeplitz-Hankel solve.
struct SolveReport {
    SampledFunction solution;
    SampledFunction ell_spectrum;    // (F_c ell)(y) on the y-grid
    SampledFunction ell_function;    // recovered ell(x), when requested
    bool has_ell_function = false;
    double residual_linf = 0.0;
    double residual_l1 = 0.0;
    double l1_bound_lhs = 0.0;       // ||f||_1
    double l1_bound_rhs = 0.0;       // sqrt(2/pi) ||xi||_1 ||ell||_1 ||h||_{L1^{0,beta}}
    double symbol_min_modulus = 0.0; // min over grid of |1 + (F_c phi)(y)|
};

} // namespace klpoly

#endif
