#ifndef KLPOLY_TESTFAMILY_HPP
#define KLPOLY_TESTFAMILY_HPP

#include <random>
#include <vector>

#include "klpoly/convolutions.hpp"

namespace klpoly {

// Seeded, deterministic triples drawn from the exponential-decay /
// power-exponential / Gaussian / indicator family with parameters in
// [0.5, 3]; the audit suites and the three-path agreement checks run
// over these.
FunctionExpr random_family_expr(std::mt19937& rng);

std::vector<PolyconvInput> registered_test_triples(unsigned seed = 7,
                                                   std::size_t count = 20);

} // namespace klpoly

#endif
