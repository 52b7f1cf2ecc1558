#pragma once

#include <optional>

#include "lineal/rng.hpp"
#include "lineal/term.hpp"

namespace lineal {

// The odot eliminators. Scrutinees must reach introduced form a.t + b.r (a
// binary ordered sum; bare components count as coefficient 1).

// dpar(a.t + b.r, [x]s1, [y]s2) -> a.(t/x)s1 || b.(r/y)s2, before merging.
TermPtr reduce_parallel_raw(const TermPtr& t, int fuel = 10000);

// Same, followed by vectorial-sum merging of Parallel nodes: coefficients of
// alpha-AC-equal components add, near-zero components vanish, and parallel
// sums of equal-shape intro pairs add position-wise.
TermPtr reduce_parallel(const TermPtr& t, int fuel = 10000);

// dmeas(a.t + b.r, [x]s1, [y]s2) picks (t/x)s1 with probability
// |a|^2/(|a|^2+|b|^2), else (r/y)s2. The chosen branch is returned unscaled.
// Zero total weight raises DegenerateMeasurement.
TermPtr reduce_measure(const TermPtr& t, Rng& rng, int fuel = 10000);

// Small-step evaluator: beta plus the two eliminators under congruence.
// dmeas needs a generator; without one it is left stuck (rng == nullptr).
TermPtr odot_normalize(const TermPtr& t, Rng* rng, int fuel = 10000);

// Reads a Top-odot-Top term as a 2-vector (left coefficient, right
// coefficient), merging Parallel nodes; nullopt if the shape is not a qubit.
std::optional<std::pair<Scalar, Scalar>> odot_qubit_amplitudes(const TermPtr& t);

}  // namespace lineal
