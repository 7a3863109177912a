#ifndef KLPOLY_FUNCMODEL_HPP
#define KLPOLY_FUNCMODEL_HPP

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "klpoly/quadrature.hpp"

namespace klpoly {

struct GridSpec {
    enum class Kind { uniform, log_uniform };
    Kind kind = Kind::uniform;
    double lo = 0.0;
    double hi = 1.0;
    int n = 2;

    static GridSpec uniform(double lo, double hi, int n);
    static GridSpec log_uniform(double lo, double hi, int n);
    void validate() const;
    double point(int i) const;
    std::vector<double> points() const;
};

// Piecewise-linear function on strictly increasing nodes; evaluates to the
// first value below the range and to 0 above it (functions in this engine
// decay at infinity).
struct Curve {
    std::vector<double> xs;
    std::vector<double> vs;

    void validate() const;
    double operator()(double x) const;
    double front_x() const { return xs.front(); }
    double back_x() const { return xs.back(); }
};

struct SampledFunction {
    GridSpec grid;
    std::vector<double> values;

    void validate() const;
    Curve to_curve() const;
};

double interpolate(const SampledFunction& s, double x);

class FunctionExpr {
public:
    struct ExpDecay { double a; };          // e^{-a x}, a > 0
    struct PowExp { int k; double a; };     // x^k e^{-a x}, k >= 0, a > 0
    struct Gaussian { double a; };          // e^{-a x^2}, a > 0
    struct Indicator { double lo, hi; };    // characteristic function of [lo, hi]
    struct Scaled { double c; std::shared_ptr<const FunctionExpr> inner; };
    struct Sum { std::shared_ptr<const FunctionExpr> left, right; };
    struct Tabulated { std::shared_ptr<const Curve> curve; std::string source; };

    using Node = std::variant<ExpDecay, PowExp, Gaussian, Indicator, Scaled, Sum, Tabulated>;

    static FunctionExpr exp_decay(double a);
    static FunctionExpr pow_exp(int k, double a);
    static FunctionExpr gaussian(double a);
    static FunctionExpr indicator(double lo, double hi);
    static FunctionExpr scaled(double c, FunctionExpr inner);
    static FunctionExpr sum(FunctionExpr left, FunctionExpr right);
    static FunctionExpr tabulated(Curve curve, std::string source = "");
    static FunctionExpr tabulated(const SampledFunction& s, std::string source = "");
    static FunctionExpr zero();

    double eval(double x) const;            // DomainError for x < 0
    const Node& node() const { return node_; }

private:
    explicit FunctionExpr(Node n) : node_(std::move(n)) {}
    Node node_;
};

double eval(const FunctionExpr& f, double x);
SampledFunction sample(const FunctionExpr& f, const GridSpec& g);

bool structurally_equal(const FunctionExpr& a, const FunctionExpr& b);

// ---- decay / support analysis (upper bounds, used for truncation) ----

double sup_bound(const FunctionExpr& f);                    // >= sup |f|
double pointwise_tail_bound(const FunctionExpr& f, double t);  // >= sup_{x>=t} |f|
double tail_mass_bound(const FunctionExpr& f, double t);    // >= integral_t^inf |f|
double support_upper(const FunctionExpr& f);                // f == 0 beyond this (inf if none)
double support_lower(const FunctionExpr& f);                // f == 0 below this
std::vector<double> expr_breakpoints(const FunctionExpr& f);
DecayEnvelope envelope_of(const FunctionExpr& f);

// Product f*g: closed form inside the family when one exists, otherwise a
// fine tabulation (grid chosen from the factors' supports).
FunctionExpr product(const FunctionExpr& a, const FunctionExpr& b);

// ---- weighted norms ----

struct NormSpec {
    struct Unit {};
    struct TwoParam { double alpha; double beta; };        // K0(beta x) x^alpha
    struct ThreeParam { double alpha1; double beta1; double gamma1; };  // x^a1 e^{-b1 x^g1}
    struct Custom { FunctionExpr rho; };

    double p = 1.0;  // >= 1, or infinity for the ess-sup surrogate
    std::variant<Unit, TwoParam, ThreeParam, Custom> weight{Unit{}};

    static NormSpec lp(double p);
    static NormSpec two_param(double p, double alpha, double beta);
    static NormSpec three_param(double p, double alpha1, double beta1, double gamma1);
    static NormSpec custom(double p, FunctionExpr rho);
    void validate() const;
};

double norm(const FunctionExpr& f, const NormSpec& spec, const QuadratureConfig& cfg = {});

// Weight value at x (1 for Unit); exposed for audits that reuse weights.
double norm_weight(const NormSpec& spec, double x, const QuadratureConfig& cfg = {});

// ---- CSV interchange (two columns x,value; header optional) ----

Curve load_curve_csv(const std::string& path);
void save_curve_csv(const Curve& c, const std::string& path);
void save_sampled_csv(const SampledFunction& s, const std::string& path);

} // namespace klpoly

#endif
