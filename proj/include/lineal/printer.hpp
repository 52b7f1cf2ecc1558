#pragma once

#include <string>

#include "lineal/term.hpp"

namespace lineal {

// Formats a real as an exact-looking literal when one of the grammar's
// shorthand shapes (integer, p/q, p/sqrtq, sqrtp/q) matches within 1e-12,
// decimal otherwise.
std::string format_real(double x);

// Scalar literal as it appears in source, parentheses included: (1/sqrt2),
// (-1/2), (0+1i).
std::string format_scalar(const Scalar& s);

// Minimal-parentheses concrete syntax; parse(pretty(t)) is alpha-AC-equal
// to t in every dialect. Thunks and releases print desugared.
std::string pretty(const TermPtr& t);

}  // namespace lineal
