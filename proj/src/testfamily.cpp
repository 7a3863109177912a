#include "klpoly/testfamily.hpp"

namespace klpoly {

FunctionExpr random_family_expr(std::mt19937& rng) {
    std::uniform_real_distribution<double> par(0.5, 3.0);
    std::uniform_real_distribution<double> scale(0.5, 1.5);
    std::uniform_int_distribution<int> variant(0, 3);
    std::uniform_int_distribution<int> k(1, 2);
    std::uniform_int_distribution<int> wrap(0, 2);

    FunctionExpr e = FunctionExpr::exp_decay(1.0);
    switch (variant(rng)) {
        case 0: e = FunctionExpr::exp_decay(par(rng)); break;
        case 1: e = FunctionExpr::pow_exp(k(rng), par(rng)); break;
        case 2: e = FunctionExpr::gaussian(par(rng)); break;
        default: {
            const double lo = 0.5 * par(rng);
            e = FunctionExpr::indicator(lo, lo + 0.5 * par(rng));
            break;
        }
    }
    if (wrap(rng) == 0) e = FunctionExpr::scaled(scale(rng), std::move(e));
    return e;
}

std::vector<PolyconvInput> registered_test_triples(unsigned seed, std::size_t count) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> beta(0.4, 0.8);
    std::vector<PolyconvInput> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        PolyconvInput in{random_family_expr(rng), random_family_expr(rng),
                         random_family_expr(rng), beta(rng)};
        out.push_back(std::move(in));
    }
    return out;
}

} // namespace klpoly
