#ifndef KLPOLY_ERRORS_HPP
#define KLPOLY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace klpoly {

// Base class for every failure the engine can signal.  Callers that only
// need "did it work" catch this; the CLI maps subclasses to exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (x <= 0 for K0,
// invalid grid, exponents breaking their linkage, ...).
struct DomainError : Error {
    using Error::Error;
};

// An integrand returned NaN or +-inf.
struct NonFiniteError : Error {
    using Error::Error;
};

// Panel refinement hit its cap before the requested tolerance was met.
struct NonConvergenceError : Error {
    using Error::Error;
};

// No truncation point below the internal ceiling brings the decay
// envelope's tail mass under tail_epsilon.
struct TailNotResolvableError : Error {
    using Error::Error;
};

// A norm or transform whose defining integral could not be resolved.
struct NonIntegrableError : Error {
    using Error::Error;
};

// A limit surrogate (lower-cut halving, truncation doubling) failed its
// stability test.
struct NotConvergedError : Error {
    using Error::Error;
};

// |1 + (F_c phi)(y)| fell below the solvability floor.  Carries the
// offending grid point and the modulus observed there.
struct SingularSymbolError : Error {
    double y;
    double modulus;
    SingularSymbolError(const std::string& msg, double y_, double mod_)
        : Error(msg), y(y_), modulus(mod_) {}
};

// The unitarity condition check failed beyond tolerance, so the inverse
// Watson operator is not available for this pair.
struct ConditionNotSatisfiedError : Error {
    using Error::Error;
};

// A weight function was <= 0 somewhere on the evaluation grid.
struct WeightVanishesError : Error {
    using Error::Error;
};

// A pointwise division hit a value too small to invert safely.
struct DivisionUnstableError : Error {
    using Error::Error;
};

// Function-expression or file parsing failure; position is a 0-based
// offset into the input text.
struct ParseError : Error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos = 0)
        : Error(msg), position(pos) {}
};

} // namespace klpoly

#endif
