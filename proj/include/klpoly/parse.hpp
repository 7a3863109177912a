#ifndef KLPOLY_PARSE_HPP
#define KLPOLY_PARSE_HPP

#include <string>

#include "klpoly/funcmodel.hpp"

namespace klpoly {

// Grammar (whitespace-insensitive):
//   expr    := term { '+' term }
//   term    := C '*' term | primary
//   primary := exp(-A*x) | exp(-A*x^2) | x^K*exp(-A*x)
//            | indicator(L,H) | table:<path.csv>
// A, C, L, H decimal literals; K a non-negative integer.
FunctionExpr parse_function(const std::string& text);

// Inverse of parse_function on the closed-form family; scales over sums
// render distributed (the grammar has no parentheses).  Tabulated
// expressions render as table:<source path> and require one.
std::string render_function(const FunctionExpr& expr);

// "lo:hi:n" or "lo:hi:n:log".
GridSpec parse_grid(const std::string& text);
std::string render_grid(const GridSpec& g);

} // namespace klpoly

#endif
