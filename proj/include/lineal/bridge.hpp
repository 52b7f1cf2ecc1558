#pragma once

#include <optional>

#include "lineal/canon.hpp"
#include "lineal/oracle.hpp"
#include "lineal/term.hpp"

namespace lineal {

// Basis conventions for moving between terms and state vectors.
//   Constants: kets and right-nested ket pairs (|0>, |1>, |01>, ...).
//   Church:    1-qubit booleans \x.\y.x and \x.\y.y, n-qubit 2^n-ary
//              selectors \x1...\x_2^n.x_i (most significant bit first), and
//              the pair normal form \f.(sum of a.(f l r)).
enum class Encoding : unsigned char { Constants, Church };

// Reads a normalized term as a state vector, auto-detecting the basis shape.
// strict (default) rejects norms different from 1 beyond epsilon; relaxed
// reads any linear combination (the zero vector included, using n_hint for
// its width). Throws EvalError when the shape is not a recognized basis
// combination.
StateVector term_to_vector(const TermPtr& t, bool strict = true, int n_hint = 1);

// Emits the canonical linear combination of basis terms for v in the chosen
// encoding. Amplitudes below epsilon are dropped.
TermPtr vector_to_term(const StateVector& v, Encoding encoding);

// Bit reading of a single basis term in either encoding; nullopt if the term
// is not a recognized basis element. Registers read most significant bit
// first, matching |b1 b2 ... bn> and tensor order.
std::optional<std::string> basis_bits(const TermPtr& t);

}  // namespace lineal
