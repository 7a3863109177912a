#include "klpoly/audit_suites.hpp"

#include <cmath>
#include <random>

#include "klpoly/testfamily.hpp"

namespace klpoly {

namespace {

struct SuiteRng {
    std::mt19937 rng;
    explicit SuiteRng(unsigned seed) : rng(seed) {}
    double in(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    }
};

std::vector<InequalityReport> young_suite(unsigned seed, std::size_t count,
                                          const QuadratureConfig& cfg) {
    SuiteRng r(seed + 101);
    std::vector<InequalityReport> out;
    for (const auto& t : registered_test_triples(seed, count)) {
        const double ip = r.in(0.7, 0.93), iq = r.in(0.7, 0.93), ir = r.in(0.7, 0.93);
        const double is = 3.0 - ip - iq - ir;
        const auto exps = ExponentTuple::young(1.0 / ip, 1.0 / iq, 1.0 / ir, 1.0 / is);
        const FunctionExpr k = random_family_expr(r.rng);
        out.push_back(young_audit(t.f, t.g, t.h, k, exps, t.beta, cfg));
    }
    return out;
}

std::vector<InequalityReport> young_norm_suite(unsigned seed, std::size_t count,
                                               const QuadratureConfig& cfg) {
    SuiteRng r(seed + 202);
    std::vector<InequalityReport> out;
    for (const auto& t : registered_test_triples(seed, count)) {
        const double ip = r.in(0.7, 0.93), iq = r.in(0.7, 0.93), ir = r.in(0.7, 0.93);
        const double is = ip + iq + ir - 2.0;
        const auto exps = ExponentTuple::young_norm(1.0 / ip, 1.0 / iq, 1.0 / ir, 1.0 / is);
        out.push_back(young_norm_audit(t.f, t.g, t.h, exps, t.beta, cfg));
    }
    return out;
}

std::vector<InequalityReport> linfty_suite(unsigned seed, std::size_t count,
                                           const QuadratureConfig& cfg) {
    SuiteRng r(seed + 303);
    std::vector<InequalityReport> out;
    for (const auto& t : registered_test_triples(seed, count)) {
        const double ip = r.in(0.55, 0.72), iq = r.in(0.55, 0.72);
        const double ir = 2.0 - ip - iq;
        out.push_back(linfty_audit(t.f, t.g, t.h, 1.0 / ip, 1.0 / iq, 1.0 / ir, t.beta, cfg));
    }
    return out;
}

std::vector<InequalityReport> threeparam_suite(unsigned seed, std::size_t count,
                                               const QuadratureConfig& cfg) {
    SuiteRng r(seed + 404);
    std::vector<InequalityReport> out;
    for (const auto& t : registered_test_triples(seed, count)) {
        const double ip = r.in(0.55, 0.72), iq = r.in(0.55, 0.72);
        const double ir = 2.0 - ip - iq;
        const double a1 = r.in(-0.5, 2.0), b1 = r.in(0.5, 2.0), g1 = r.in(0.5, 2.5);
        const double s = r.in(1.0, 2.5);
        out.push_back(threeparam_audit(t.f, t.g, t.h, 1.0 / ip, 1.0 / iq, 1.0 / ir, s, a1,
                                       b1, g1, t.beta, cfg));
    }
    return out;
}

std::vector<InequalityReport> saitoh_suite(unsigned seed, std::size_t count,
                                           const QuadratureConfig& cfg) {
    SuiteRng r(seed + 505);
    std::vector<InequalityReport> out;
    // the classical weight triple rho = (1, e^{-t}, e^{-2t}) goes first
    out.push_back(saitoh_audit(FunctionExpr::exp_decay(1.0), FunctionExpr::exp_decay(1.0),
                               FunctionExpr::exp_decay(1.0), std::nullopt,
                               FunctionExpr::exp_decay(1.0), FunctionExpr::exp_decay(2.0),
                               2.0, cfg));
    std::size_t i = 0;
    for (const auto& t : registered_test_triples(seed, count)) {
        const double p = r.in(1.25, 3.0);
        const FunctionExpr rho_a = FunctionExpr::exp_decay(r.in(0.5, 2.0));
        const FunctionExpr rho_b = FunctionExpr::exp_decay(r.in(0.5, 2.0));
        const FunctionExpr rho_c = FunctionExpr::exp_decay(r.in(0.5, 2.0));
        switch (i % 3) {
            case 0:  // rho1 = 1, C3 form
                out.push_back(saitoh_audit(t.f, t.g, t.h, std::nullopt, rho_b, rho_c, p, cfg));
                break;
            case 1:  // rho3 = 1, C4 form
                out.push_back(saitoh_audit(t.f, t.g, t.h, rho_a, rho_b, std::nullopt, p, cfg));
                break;
            default:  // full weighted form
                out.push_back(saitoh_audit(t.f, t.g, t.h, rho_a, rho_b, rho_c, p, cfg));
                break;
        }
        ++i;
    }
    return out;
}

std::vector<InequalityReport> kernel_suite(const QuadratureConfig& cfg) {
    std::vector<InequalityReport> out;
    const double grid[3] = {0.5, 1.0, 2.0};
    for (double a : grid)
        for (double b : grid)
            for (double c : grid) {
                out.push_back(kernel_bound_audit(KernelBoundKind::i1_dx, a, b, c, cfg));
                out.push_back(kernel_bound_audit(KernelBoundKind::i2_du, a, b, c, cfg));
                out.push_back(kernel_bound_audit(KernelBoundKind::i3_dv, a, b, c, cfg));
                out.push_back(kernel_bound_audit(KernelBoundKind::i4_dw, a, b, c, cfg));
            }
    return out;
}

} // namespace

std::vector<InequalityReport> audit_suite(const std::string& suite, unsigned seed,
                                          std::size_t count, const QuadratureConfig& cfg) {
    if (suite == "young") return young_suite(seed, count, cfg);
    if (suite == "young-norm") return young_norm_suite(seed, count, cfg);
    if (suite == "linfty") return linfty_suite(seed, count, cfg);
    if (suite == "threeparam") return threeparam_suite(seed, count, cfg);
    if (suite == "saitoh") return saitoh_suite(seed, count, cfg);
    if (suite == "kernel") return kernel_suite(cfg);
    if (suite == "all") {
        std::vector<InequalityReport> out;
        for (const char* name : {"young", "young-norm", "linfty", "threeparam", "saitoh",
                                 "kernel"}) {
            auto part = audit_suite(name, seed, count, cfg);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    throw DomainError("unknown audit suite: " + suite);
}

} // namespace klpoly
