#pragma once

#include <string>

#include "lineal/errors.hpp"
#include "lineal/term.hpp"

namespace lineal {

// Parses the concrete syntax:
//   \x.t  \x:T.t          abstraction (body extends through sums)
//   t r                   application, left-associative
//   (1/sqrt2).t  (0+1i).t scaling
//   t + r                 sum (binary in the AST; canonicalization flattens)
//   zero  |0>  |1>  |01>  zero vector, kets, ket registers (pair sugar)
//   [t]  {t}              thunk / release sugar
//   pi  pi_2              measurement constants
//   if c then t else r    conditional (Lambda-S)
//   (t, r)                pair (Lambda-S)
//   *  t || r             odot star and parallel
//   dpar(t, [x]r, [y]s)   odot eliminators
//   dmeas(t, [x]r, [y]s)
//   -- comment            to end of line
// Types: B, T*T (right-nested), S T, T -> T, Top, T @ T.
//
// Constructs outside the dialect raise DialectError with a position; other
// syntax problems raise ParseError. The result is not canonicalized.
TermPtr parse(const std::string& source, Dialect dialect);

// Parses a type in the syntax above (used by tests and the REPL).
TypePtr parse_type(const std::string& source);

}  // namespace lineal
