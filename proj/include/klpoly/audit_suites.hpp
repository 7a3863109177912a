#ifndef KLPOLY_AUDIT_SUITES_HPP
#define KLPOLY_AUDIT_SUITES_HPP

#include <string>
#include <vector>

#include "klpoly/inequalities.hpp"

namespace klpoly {

// Batch audits over the seeded test family.  Suites: "young", "young-norm",
// "linfty", "threeparam", "saitoh", "kernel", or "all".  The kernel suite
// runs the fixed 27-combination grid over {0.5, 1, 2}^3 and ignores count.
std::vector<InequalityReport> audit_suite(const std::string& suite, unsigned seed,
                                          std::size_t count,
                                          const QuadratureConfig& cfg = {});

} // namespace klpoly

#endif
