#pragma once

#include <utility>
#include <vector>

#include "lineal/term.hpp"

namespace lineal {

// How sums are treated by canonicalization. The Lineal and Lambda-S `+` is
// associative-commutative, so sums are flattened and sorted. The odot intro
// `+` is an ordered pairing whose left component feeds the [x] branch of the
// eliminators, so odot terms keep their sum shape untouched.
enum class SumMode : unsigned char { Ac, Ordered };

inline SumMode sum_mode_for(Dialect d) {
  return d == Dialect::Odot ? SumMode::Ordered : SumMode::Ac;
}

// Total syntactic order: constructor rank, then recursive lexicographic
// comparison with binders compared by de-Bruijn-style depth so the order is
// alpha-invariant. Scalars compare exactly (re, im).
int term_compare(const TermPtr& a, const TermPtr& b);

// Idempotent; flattens nested sums and sorts entries under SumMode::Ac,
// leaves sums untouched under SumMode::Ordered. Never merges scalars and
// never drops entries: those are rewrite steps, not canonicalization.
TermPtr canonicalize(const TermPtr& t, SumMode mode = SumMode::Ac);

// Equality modulo alpha, AC of + and Parallel, and epsilon on scalars.
bool alpha_ac_eq(const TermPtr& a, const TermPtr& b);

// A term read as a finite linear combination: entries pair a coefficient
// with a base term that is itself neither Sum, Scale nor Zero. Scalars are
// pushed through sums arithmetically, coefficients of alpha-AC-equal bases
// add, and near-zero coefficients are dropped. Empty entries mean the zero
// vector. This is the semantic reading used by measurement, Parallel merging
// and the state-vector bridge; it is not a rewrite.
struct LinearForm {
  std::vector<std::pair<Scalar, TermPtr>> entries;

  static LinearForm from_term(const TermPtr& t);
  void add(Scalar coeff, const TermPtr& base);
  void scale(Scalar s);
  // Sum of |coeff|^2.
  double norm2() const;
  // Rebuilds Sum(Scale(...), ...) in canonical AC order; Zero when empty.
  TermPtr to_term() const;
};

}  // namespace lineal
