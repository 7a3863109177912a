#include "klpoly/funcmodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "klpoly/io.hpp"
#include "klpoly/special.hpp"

namespace klpoly {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

QuadratureConfig weight_inner_cfg(const QuadratureConfig& cfg) {
    QuadratureConfig inner = cfg;
    inner.abs_tol = std::min(1e-13, cfg.abs_tol * 1e-3);
    inner.rel_tol = std::min(1e-11, cfg.rel_tol);
    return inner;
}
} // namespace

// ---------------------------------------------------------------- GridSpec

GridSpec GridSpec::uniform(double lo, double hi, int n) {
    GridSpec g{Kind::uniform, lo, hi, n};
    g.validate();
    return g;
}

GridSpec GridSpec::log_uniform(double lo, double hi, int n) {
    GridSpec g{Kind::log_uniform, lo, hi, n};
    g.validate();
    return g;
}

void GridSpec::validate() const {
    if (!(lo >= 0)) throw DomainError("grid lo must be >= 0");
    if (!(lo < hi)) throw DomainError("grid requires lo < hi");
    if (n < 2) throw DomainError("grid requires n >= 2");
    if (kind == Kind::log_uniform && !(lo > 0))
        throw DomainError("log-uniform grid requires lo > 0");
    if (!std::isfinite(hi)) throw DomainError("grid hi must be finite");
}

double GridSpec::point(int i) const {
    if (i <= 0) return lo;
    if (i >= n - 1) return hi;
    const double t = static_cast<double>(i) / (n - 1);
    if (kind == Kind::uniform) return lo + (hi - lo) * t;
    return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * t);
}

std::vector<double> GridSpec::points() const {
    std::vector<double> p(n);
    for (int i = 0; i < n; ++i) p[i] = point(i);
    return p;
}

// ------------------------------------------------------------------- Curve

void Curve::validate() const {
    if (xs.size() < 2 || xs.size() != vs.size())
        throw DomainError("curve needs >= 2 nodes and matching value count");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!std::isfinite(xs[i]) || !std::isfinite(vs[i]))
            throw DomainError("curve contains a non-finite entry");
        if (i && !(xs[i] > xs[i - 1]))
            throw DomainError("curve x nodes must be strictly increasing");
    }
    if (!(xs.front() >= 0)) throw DomainError("curve domain must lie in [0, inf)");
}

double Curve::operator()(double x) const {
    if (x <= xs.front()) return vs.front();
    if (x > xs.back()) return 0.0;
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t j = static_cast<std::size_t>(it - xs.begin());
    const double x0 = xs[j - 1], x1 = xs[j];
    const double t = (x - x0) / (x1 - x0);
    return vs[j - 1] + t * (vs[j] - vs[j - 1]);
}

// --------------------------------------------------------- SampledFunction

void SampledFunction::validate() const {
    grid.validate();
    if (static_cast<int>(values.size()) != grid.n)
        throw DomainError("sampled function length must equal grid.n");
    for (double v : values)
        if (!std::isfinite(v)) throw DomainError("sampled function has non-finite value");
}

Curve SampledFunction::to_curve() const {
    validate();
    return Curve{grid.points(), values};
}

double interpolate(const SampledFunction& s, double x) {
    s.validate();
    if (x <= s.grid.lo) return s.values.front();
    if (x > s.grid.hi) return 0.0;
    // locate the bracketing pair; grids are small, binary search on point()
    int lo = 0, hi = s.grid.n - 1;
    while (hi - lo > 1) {
        const int mid = (lo + hi) / 2;
        if (s.grid.point(mid) < x)
            lo = mid;
        else
            hi = mid;
    }
    const double x0 = s.grid.point(lo), x1 = s.grid.point(hi);
    const double t = (x - x0) / (x1 - x0);
    return s.values[lo] + t * (s.values[hi] - s.values[lo]);
}

// ------------------------------------------------------------ FunctionExpr

FunctionExpr FunctionExpr::exp_decay(double a) {
    if (!(a > 0)) throw DomainError("exp_decay requires a > 0");
    return FunctionExpr(Node{ExpDecay{a}});
}

FunctionExpr FunctionExpr::pow_exp(int k, double a) {
    if (k < 0) throw DomainError("pow_exp requires k >= 0");
    if (!(a > 0)) throw DomainError("pow_exp requires a > 0");
    return FunctionExpr(Node{PowExp{k, a}});
}

FunctionExpr FunctionExpr::gaussian(double a) {
    if (!(a > 0)) throw DomainError("gaussian requires a > 0");
    return FunctionExpr(Node{Gaussian{a}});
}

FunctionExpr FunctionExpr::indicator(double lo, double hi) {
    if (!(lo >= 0)) throw DomainError("indicator requires lo >= 0");
    if (!(hi > lo)) throw DomainError("indicator requires hi > lo");
    return FunctionExpr(Node{Indicator{lo, hi}});
}

FunctionExpr FunctionExpr::scaled(double c, FunctionExpr inner) {
    if (!std::isfinite(c)) throw DomainError("scale factor must be finite");
    return FunctionExpr(Node{Scaled{c, std::make_shared<FunctionExpr>(std::move(inner))}});
}

FunctionExpr FunctionExpr::sum(FunctionExpr left, FunctionExpr right) {
    return FunctionExpr(Node{Sum{std::make_shared<FunctionExpr>(std::move(left)),
                                 std::make_shared<FunctionExpr>(std::move(right))}});
}

FunctionExpr FunctionExpr::tabulated(Curve curve, std::string source) {
    curve.validate();
    return FunctionExpr(Node{Tabulated{std::make_shared<Curve>(std::move(curve)),
                                       std::move(source)}});
}

FunctionExpr FunctionExpr::tabulated(const SampledFunction& s, std::string source) {
    return tabulated(s.to_curve(), std::move(source));
}

FunctionExpr FunctionExpr::zero() { return scaled(0.0, exp_decay(1.0)); }

double FunctionExpr::eval(double x) const {
    if (!(x >= 0)) throw DomainError("function expressions are defined on [0, inf)");
    return std::visit(
        [x](const auto& n) -> double {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ExpDecay>) {
                return exp_floored(-n.a * x);
            } else if constexpr (std::is_same_v<T, PowExp>) {
                return std::pow(x, n.k) * exp_floored(-n.a * x);
            } else if constexpr (std::is_same_v<T, Gaussian>) {
                return exp_floored(-n.a * x * x);
            } else if constexpr (std::is_same_v<T, Indicator>) {
                return (x >= n.lo && x <= n.hi) ? 1.0 : 0.0;
            } else if constexpr (std::is_same_v<T, Scaled>) {
                return n.c * n.inner->eval(x);
            } else if constexpr (std::is_same_v<T, Sum>) {
                return n.left->eval(x) + n.right->eval(x);
            } else {
                return (*n.curve)(x);
            }
        },
        node_);
}

double eval(const FunctionExpr& f, double x) { return f.eval(x); }

SampledFunction sample(const FunctionExpr& f, const GridSpec& g) {
    g.validate();
    SampledFunction s;
    s.grid = g;
    s.values.resize(g.n);
    for (int i = 0; i < g.n; ++i) s.values[i] = f.eval(g.point(i));
    return s;
}

bool structurally_equal(const FunctionExpr& a, const FunctionExpr& b) {
    if (a.node().index() != b.node().index()) return false;
    using FE = FunctionExpr;
    return std::visit(
        [&b](const auto& na) -> bool {
            using T = std::decay_t<decltype(na)>;
            const auto& nb = std::get<T>(b.node());
            if constexpr (std::is_same_v<T, FE::ExpDecay>) {
                return na.a == nb.a;
            } else if constexpr (std::is_same_v<T, FE::PowExp>) {
                return na.k == nb.k && na.a == nb.a;
            } else if constexpr (std::is_same_v<T, FE::Gaussian>) {
                return na.a == nb.a;
            } else if constexpr (std::is_same_v<T, FE::Indicator>) {
                return na.lo == nb.lo && na.hi == nb.hi;
            } else if constexpr (std::is_same_v<T, FE::Scaled>) {
                return na.c == nb.c && structurally_equal(*na.inner, *nb.inner);
            } else if constexpr (std::is_same_v<T, FE::Sum>) {
                return structurally_equal(*na.left, *nb.left) &&
                       structurally_equal(*na.right, *nb.right);
            } else {
                return na.curve->xs == nb.curve->xs && na.curve->vs == nb.curve->vs &&
                       na.source == nb.source;
            }
        },
        a.node());
}

// ------------------------------------------------------- decay analysis

double pointwise_tail_bound(const FunctionExpr& f, double t) {
    using FE = FunctionExpr;
    if (t < 0) t = 0;
    return std::visit(
        [t](const auto& n) -> double {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, FE::ExpDecay>) {
                return exp_floored(-n.a * t);
            } else if constexpr (std::is_same_v<T, FE::PowExp>) {
                const double peak = n.k / n.a;
                const double s = std::max(t, peak);
                return std::pow(s, n.k) * exp_floored(-n.a * s);
            } else if constexpr (std::is_same_v<T, FE::Gaussian>) {
                return exp_floored(-n.a * t * t);
            } else if constexpr (std::is_same_v<T, FE::Indicator>) {
                return (t <= n.hi) ? 1.0 : 0.0;
            } else if constexpr (std::is_same_v<T, FE::Scaled>) {
                return std::fabs(n.c) * pointwise_tail_bound(*n.inner, t);
            } else if constexpr (std::is_same_v<T, FE::Sum>) {
                return pointwise_tail_bound(*n.left, t) + pointwise_tail_bound(*n.right, t);
            } else {
                const Curve& c = *n.curve;
                if (t > c.back_x()) return 0.0;
                double m = std::fabs(c(t));
                for (std::size_t i = 0; i < c.xs.size(); ++i)
                    if (c.xs[i] >= t) m = std::max(m, std::fabs(c.vs[i]));
                return m;
            }
        },
        f.node());
}

double sup_bound(const FunctionExpr& f) { return pointwise_tail_bound(f, 0.0); }

double tail_mass_bound(const FunctionExpr& f, double t) {
    using FE = FunctionExpr;
    if (t < 0) t = 0;
    return std::visit(
        [t, &f](const auto& n) -> double {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, FE::ExpDecay>) {
                return exp_floored(-n.a * t) / n.a;
            } else if constexpr (std::is_same_v<T, FE::PowExp>) {
                // integral_t^inf x^k e^{-a x} dx, exact for integer k
                double fact = 1.0;  // k! / j!
                double sum = 0.0;
                for (int j = n.k; j >= 0; --j) {
                    sum += fact * std::pow(t, j) / std::pow(n.a, n.k - j + 1);
                    fact *= j;
                }
                return exp_floored(-n.a * t) * sum;
            } else if constexpr (std::is_same_v<T, FE::Gaussian>) {
                const double full = 0.5 * std::sqrt(M_PI / n.a);
                if (t <= 0.5) return full;
                return std::min(full, exp_floored(-n.a * t * t) / (2.0 * n.a * t));
            } else if constexpr (std::is_same_v<T, FE::Indicator>) {
                return std::max(0.0, n.hi - std::max(n.lo, t));
            } else if constexpr (std::is_same_v<T, FE::Scaled>) {
                return std::fabs(n.c) * tail_mass_bound(*n.inner, t);
            } else if constexpr (std::is_same_v<T, FE::Sum>) {
                return tail_mass_bound(*n.left, t) + tail_mass_bound(*n.right, t);
            } else {
                // exact integral of |piecewise linear| over [t, back]
                const Curve& c = *n.curve;
                if (t >= c.back_x()) return 0.0;
                double acc = 0.0;
                for (std::size_t i = 0; i + 1 < c.xs.size(); ++i) {
                    double x0 = c.xs[i], x1 = c.xs[i + 1];
                    if (x1 <= t) continue;
                    double v0 = c.vs[i], v1 = c.vs[i + 1];
                    if (x0 < t) {
                        v0 = c(t);
                        x0 = t;
                    }
                    const double h = x1 - x0;
                    if (v0 * v1 >= 0.0) {
                        acc += 0.5 * (std::fabs(v0) + std::fabs(v1)) * h;
                    } else {
                        const double xr = v0 / (v0 - v1);  // crossing in [0,1]
                        acc += 0.5 * std::fabs(v0) * xr * h +
                               0.5 * std::fabs(v1) * (1.0 - xr) * h;
                    }
                }
                return acc;
            }
        },
        f.node());
}

double support_upper(const FunctionExpr& f) {
    using FE = FunctionExpr;
    return std::visit(
        [](const auto& n) -> double {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, FE::Indicator>) {
                return n.hi;
            } else if constexpr (std::is_same_v<T, FE::Scaled>) {
                return n.c == 0.0 ? 0.0 : support_upper(*n.inner);
            } else if constexpr (std::is_same_v<T, FE::Sum>) {
                return std::max(support_upper(*n.left), support_upper(*n.right));
            } else if constexpr (std::is_same_v<T, FE::Tabulated>) {
                return n.curve->back_x();
            } else {
                return kInf;
            }
        },
        f.node());
}

double support_lower(const FunctionExpr& f) {
    using FE = FunctionExpr;
    return std::visit(
        [](const auto& n) -> double {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, FE::Indicator>) {
                return n.lo;
            } else if constexpr (std::is_same_v<T, FE::Scaled>) {
                return support_lower(*n.inner);
            } else if constexpr (std::is_same_v<T, FE::Sum>) {
                return std::min(support_lower(*n.left), support_lower(*n.right));
            } else {
                return 0.0;
            }
        },
        f.node());
}

std::vector<double> expr_breakpoints(const FunctionExpr& f) {
    using FE = FunctionExpr;
    std::set<double> bp;
    std::function<void(const FunctionExpr&)> walk = [&](const FunctionExpr& e) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, FE::Indicator>) {
                    bp.insert(n.lo);
                    bp.insert(n.hi);
                } else if constexpr (std::is_same_v<T, FE::Scaled>) {
                    walk(*n.inner);
                } else if constexpr (std::is_same_v<T, FE::Sum>) {
                    walk(*n.left);
                    walk(*n.right);
                } else if constexpr (std::is_same_v<T, FE::Tabulated>) {
                    bp.insert(n.curve->front_x());
                    bp.insert(n.curve->back_x());
                }
            },
            e.node());
    };
    walk(f);
    return {bp.begin(), bp.end()};
}

DecayEnvelope envelope_of(const FunctionExpr& f) {
    return DecayEnvelope{
        [f](double t) { return pointwise_tail_bound(f, t); },
        [f](double t) { return tail_mass_bound(f, t); }};
}

// ----------------------------------------------------------------- product

namespace {
FunctionExpr tabulated_product(const FunctionExpr& a, const FunctionExpr& b) {
    double X = std::min({support_upper(a), support_upper(b), 60.0});
    if (!(X > 0)) return FunctionExpr::zero();
    std::set<double> nodes;
    const int n = 3000;
    for (int i = 0; i <= n; ++i) nodes.insert(X * i / n);
    for (const FunctionExpr* e : {&a, &b})
        for (double x : expr_breakpoints(*e))
            if (x > 0 && x < X) {
                nodes.insert(x);
                nodes.insert(std::nextafter(x, 0.0));  // represent jumps sharply
            }
    Curve c;
    for (double x : nodes) {
        c.xs.push_back(x);
        c.vs.push_back(a.eval(x) * b.eval(x));
    }
    return FunctionExpr::tabulated(std::move(c));
}
} // namespace

FunctionExpr product(const FunctionExpr& a, const FunctionExpr& b) {
    using FE = FunctionExpr;
    // distribute scales and sums first
    if (const auto* s = std::get_if<FE::Scaled>(&a.node()))
        return FE::scaled(s->c, product(*s->inner, b));
    if (const auto* s = std::get_if<FE::Scaled>(&b.node()))
        return FE::scaled(s->c, product(a, *s->inner));
    if (const auto* s = std::get_if<FE::Sum>(&a.node()))
        return FE::sum(product(*s->left, b), product(*s->right, b));
    if (const auto* s = std::get_if<FE::Sum>(&b.node()))
        return FE::sum(product(a, *s->left), product(a, *s->right));

    const auto* ea = std::get_if<FE::ExpDecay>(&a.node());
    const auto* eb = std::get_if<FE::ExpDecay>(&b.node());
    const auto* pa = std::get_if<FE::PowExp>(&a.node());
    const auto* pb = std::get_if<FE::PowExp>(&b.node());
    const auto* ga = std::get_if<FE::Gaussian>(&a.node());
    const auto* gb = std::get_if<FE::Gaussian>(&b.node());
    const auto* ia = std::get_if<FE::Indicator>(&a.node());
    const auto* ib = std::get_if<FE::Indicator>(&b.node());

    if (ea && eb) return FE::exp_decay(ea->a + eb->a);
    if (ea && pb) return FE::pow_exp(pb->k, ea->a + pb->a);
    if (pa && eb) return FE::pow_exp(pa->k, pa->a + eb->a);
    if (pa && pb) return FE::pow_exp(pa->k + pb->k, pa->a + pb->a);
    if (ga && gb) return FE::gaussian(ga->a + gb->a);
    if (ia && ib) {
        const double lo = std::max(ia->lo, ib->lo);
        const double hi = std::min(ia->hi, ib->hi);
        return hi > lo ? FE::indicator(lo, hi) : FE::zero();
    }
    return tabulated_product(a, b);
}

// ------------------------------------------------------------------- norms

NormSpec NormSpec::lp(double p) {
    NormSpec s;
    s.p = p;
    s.validate();
    return s;
}

NormSpec NormSpec::two_param(double p, double alpha, double beta) {
    NormSpec s;
    s.p = p;
    s.weight = TwoParam{alpha, beta};
    s.validate();
    return s;
}

NormSpec NormSpec::three_param(double p, double alpha1, double beta1, double gamma1) {
    NormSpec s;
    s.p = p;
    s.weight = ThreeParam{alpha1, beta1, gamma1};
    s.validate();
    return s;
}

NormSpec NormSpec::custom(double p, FunctionExpr rho) {
    NormSpec s;
    s.p = p;
    s.weight = Custom{std::move(rho)};
    s.validate();
    return s;
}

void NormSpec::validate() const {
    if (!(p >= 1.0)) throw DomainError("norm exponent must satisfy p >= 1");
    if (const auto* w = std::get_if<TwoParam>(&weight)) {
        if (!(w->beta > 0 && w->beta <= 1.0))
            throw DomainError("two-parameter weight requires beta in (0, 1]");
    } else if (const auto* w3 = std::get_if<ThreeParam>(&weight)) {
        if (!(w3->alpha1 > -1.0)) throw DomainError("three-parameter weight requires alpha1 > -1");
        if (!(w3->beta1 > 0) || !(w3->gamma1 > 0))
            throw DomainError("three-parameter weight requires beta1, gamma1 > 0");
    }
}

double norm_weight(const NormSpec& spec, double x, const QuadratureConfig& cfg) {
    return std::visit(
        [x, &cfg](const auto& w) -> double {
            using T = std::decay_t<decltype(w)>;
            if constexpr (std::is_same_v<T, NormSpec::Unit>) {
                return 1.0;
            } else if constexpr (std::is_same_v<T, NormSpec::TwoParam>) {
                const double xa = (w.alpha == 0.0) ? 1.0 : std::pow(x, w.alpha);
                return k0(w.beta * x, cfg) * xa;
            } else if constexpr (std::is_same_v<T, NormSpec::ThreeParam>) {
                const double xa = (w.alpha1 == 0.0) ? 1.0 : std::pow(x, w.alpha1);
                return xa * exp_floored(-w.beta1 * std::pow(x, w.gamma1));
            } else {
                return w.rho.eval(x);
            }
        },
        spec.weight);
}

namespace {

// Upper bound on integral over [T, inf) of the weight alone (may be inf).
double weight_tail_integral_bound(const NormSpec& spec, double T) {
    return std::visit(
        [T](const auto& w) -> double {
            using WT = std::decay_t<decltype(w)>;
            if constexpr (std::is_same_v<WT, NormSpec::Unit>) {
                return kInf;
            } else if constexpr (std::is_same_v<WT, NormSpec::TwoParam>) {
                if (!(T > 0)) return kInf;
                // K0(bx) <= k0_upper(bT) e^{-b(x-T)} for x >= T
                double c;
                if (w.alpha <= 0.0) {
                    c = std::pow(T, w.alpha);
                } else {
                    const double xs = std::max(T, 2.0 * w.alpha / w.beta);
                    c = std::pow(xs, w.alpha) * exp_floored(-0.5 * w.beta * (xs - T));
                }
                return k0_upper_bound(w.beta * T) * c * 2.0 / w.beta;
            } else if constexpr (std::is_same_v<WT, NormSpec::ThreeParam>) {
                const double sbar = (w.alpha1 + 1.0) / w.gamma1;
                const double z = w.beta1 * std::pow(T, w.gamma1);
                if (!(z >= std::max(2.0 * sbar, 2.0))) return kInf;
                return (2.0 / w.gamma1) * std::pow(w.beta1, -sbar) *
                       std::pow(z, sbar - 1.0) * exp_floored(-z);
            } else {
                return tail_mass_bound(w.rho, T);
            }
        },
        spec.weight);
}

double norm_tail_bound(const FunctionExpr& f, const NormSpec& spec, double T) {
    const double pe = pointwise_tail_bound(f, T);
    if (pe == 0.0) return 0.0;
    const double wt = weight_tail_integral_bound(spec, T);
    double bound = std::isfinite(wt) ? std::pow(pe, spec.p) * wt : kInf;
    if (std::holds_alternative<NormSpec::Unit>(spec.weight)) {
        bound = std::min(bound, std::pow(pe, spec.p - 1.0) * tail_mass_bound(f, T));
    } else if (const auto* cw = std::get_if<NormSpec::Custom>(&spec.weight)) {
        bound = std::min(bound, std::pow(pe, spec.p - 1.0) * tail_mass_bound(f, T) *
                                    pointwise_tail_bound(cw->rho, T));
    }
    return bound;
}

bool weight_singular_at_zero(const NormSpec& spec) {
    if (std::holds_alternative<NormSpec::TwoParam>(spec.weight)) return true;
    if (const auto* w3 = std::get_if<NormSpec::ThreeParam>(&spec.weight))
        return w3->alpha1 < 0.0 || w3->gamma1 < 1.0;
    return false;
}

} // namespace

double norm(const FunctionExpr& f, const NormSpec& spec, const QuadratureConfig& cfg) {
    spec.validate();
    cfg.validate();

    if (std::isinf(spec.p)) {
        // ess-sup surrogate: dense log-spaced probe plus the origin
        double m = std::fabs(f.eval(0.0));
        const int n = 4096;
        const double lo = 1e-6, hi = 1e4;
        for (int i = 0; i < n; ++i) {
            const double x = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
            m = std::max(m, std::fabs(f.eval(x)));
        }
        return m;
    }

    const QuadratureConfig wcfg = weight_inner_cfg(cfg);
    const DecayEnvelope env{
        [](double) { return 0.0; },
        [f, spec](double T) { return norm_tail_bound(f, spec, T); }};

    double T;
    try {
        T = choose_truncation(env, cfg.tail_epsilon, 0.0);
    } catch (const TailNotResolvableError& e) {
        throw NonIntegrableError(std::string("norm tail not resolvable: ") + e.what());
    }
    if (T <= 0.0) return 0.0;

    auto integrand = [&f, &spec, &wcfg](double x) {
        const double v = std::fabs(f.eval(x));
        if (v == 0.0) return 0.0;
        return std::pow(v, spec.p) * norm_weight(spec, x, wcfg);
    };

    const std::vector<double> bp = expr_breakpoints(f);
    double total = 0.0, s = 0.0;
    if (weight_singular_at_zero(spec)) {
        s = std::min(1.0, T);
        total += tanh_sinh_finite(integrand, 0.0, s, 0.5 * cfg.abs_tol, 0.5 * cfg.rel_tol);
    }
    if (T > s) {
        try {
            total += integrate_finite(integrand, s, T, cfg, bp).value;
        } catch (const TailNotResolvableError& e) {
            throw NonIntegrableError(e.what());
        }
    }
    total = std::max(total, 0.0);
    return std::pow(total, 1.0 / spec.p);
}

// --------------------------------------------------------------------- CSV

Curve load_curve_csv(const std::string& path) {
    const auto rows = parse_two_column_csv(read_text_file(path));
    Curve c;
    c.xs.reserve(rows.size());
    c.vs.reserve(rows.size());
    for (const auto& [x, v] : rows) {
        if (!c.xs.empty() && !(x > c.xs.back()))
            throw ParseError("CSV x column must be strictly increasing");
        c.xs.push_back(x);
        c.vs.push_back(v);
    }
    c.validate();
    return c;
}

void save_curve_csv(const Curve& c, const std::string& path) {
    std::vector<std::vector<double>> rows;
    rows.reserve(c.xs.size());
    for (std::size_t i = 0; i < c.xs.size(); ++i)
        rows.push_back({c.xs[i], c.vs[i]});
    write_text_atomic(path, render_csv({"x", "value"}, rows));
}

void save_sampled_csv(const SampledFunction& s, const std::string& path) {
    save_curve_csv(s.to_curve(), path);
}

} // namespace klpoly
