#pragma once

#include <map>
#include <string>

#include "lineal/errors.hpp"
#include "lineal/term.hpp"
#include "lineal/types.hpp"

namespace lineal {

// Binder environment for the typed dialects.
using TypingContext = std::map<std::string, TypePtr>;

// Lambda-S typing. Throws TypeError (with the offending construct named) on:
// unannotated binders, non-qubit domains, S-annotated binders used more than
// once, unbound variables, argument/domain mismatches, unjoinable branches.
//
// Rules (minimal reconstruction): kets are B; Scale gives S(type); Sum gives
// S(join); a function Psi => A applied to T <= Psi gives A and to
// T <= S(Psi) gives S(A); pi_n is S(B^n) => B^n; if expects a condition
// <= S(B) and joins its branches (wrapped in S when the condition is
// superposed); Zero fits any S-type.
TypePtr typecheck(const TypingContext& ctx, const TermPtr& t);

inline TypePtr typecheck(const TermPtr& t) { return typecheck(TypingContext{}, t); }

// odot typing: * is Top; scaling preserves the type; t + r pairs the two
// component types into Odot(left, right); dpar/dmeas eliminate Odot(A, B)
// with branches [x:A] and [y:B] that must agree on one result type.
TypePtr odot_typecheck(const TypingContext& ctx, const TermPtr& t);

inline TypePtr odot_typecheck(const TermPtr& t) { return odot_typecheck(TypingContext{}, t); }

}  // namespace lineal
