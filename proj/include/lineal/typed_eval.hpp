#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lineal/rewrite.hpp"
#include "lineal/rng.hpp"
#include "lineal/term.hpp"

namespace lineal {

// Lambda-S reduction. Reuses the untyped rule groups with the two
// type-directed changes the calculus is about:
//   - beta on a base-typed binder (\x:B^n.t) consumes basis arguments only;
//     superposed arguments are first spread by the application group;
//   - beta-s on an S-typed binder substitutes any argument in one step, and
//     the argument-side application rules are switched off for functions
//     with S domains (pi included), so superpositions reach them whole.
// Conditionals reduce by |1>/|0> selection and distribute over sums, scales
// and zero. Precondition: t typechecks in Lambda-S.
std::optional<TraceStep> typed_step(const TermPtr& t, const EngineConfig& cfg);

ReductionTrace typed_normalize(const TermPtr& t, const EngineConfig& cfg);

struct OutcomeEntry {
  TermPtr term;
  double probability;
};

struct OutcomeDistribution {
  std::vector<OutcomeEntry> outcomes;
  std::optional<uint64_t> seed;

  // {"outcomes":[{"term":"|0>","p":0.75}],"seed":7}
  std::string to_json() const;
};

// Distribution of the measurement pi_n applied to a normalized state: t must
// reduce to Meas(n) applied to a linear combination of n-qubit kets.
// Probabilities are |a_i|^2 renormalized by the total; a total below epsilon
// raises DegenerateMeasurement.
OutcomeDistribution measure_distribution(const TermPtr& t, const EngineConfig& cfg);

// Runs t to a measurement-free normal form, resolving each pi by sampling
// with the given seed. Deterministic per seed.
TermPtr run(const TermPtr& t, uint64_t seed, const EngineConfig& cfg);

enum class Realization : unsigned char { Yes, No, Unknown };

// Realizability gate for A = B^n or S(B^n): normalizes t and demands a basis
// ket for B^n, a unit-norm (sum of |a_i|^2 = 1 within epsilon) ket
// combination for S(B^n). Fuel exhaustion reports Unknown.
Realization realizes(const TermPtr& t, const TypePtr& a, const EngineConfig& cfg);

}  // namespace lineal
