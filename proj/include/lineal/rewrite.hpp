#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lineal/canon.hpp"
#include "lineal/rng.hpp"
#include "lineal/term.hpp"

namespace lineal {

// Rule identities. The untyped engine only ever reports the first four
// groups: Beta (1 rule), Elementary (6), Factorization (3), Application (6).
// BetaS and Conditional extend the same scheme for the typed engine.
enum class RuleGroup : unsigned char {
  Beta,
  Elementary,
  Factorization,
  Application,
  BetaS,
  Conditional,
};

struct RuleId {
  RuleGroup group;
  int index = 0;

  // "application/3", "beta/0", "beta-s/0", ...
  std::string to_string() const;
  bool operator==(const RuleId& o) const { return group == o.group && index == o.index; }
};

// Rule indices, in the order the groups list them:
//   elementary:    0: t+0->t   1: 0.t->0   2: 1.t->t   3: a.0->0
//                  4: a.(b.t)->(ab).t      5: a.(t+r)->a.t+a.r
//   factorization: 0: a.t+b.t->(a+b).t  1: a.t+t->(a+1).t  2: t+t->2.t
//   application:   0: (t+r)s->ts+rs  1: (a.t)r->a.(tr)  2: 0 t->0
//                  3: s(t+r)->st+sr  4: r(a.t)->a.(rt)  5: t 0->0

enum class Strategy : unsigned char { LeftmostOutermost, RandomSeeded };

struct EngineConfig {
  bool restriction_enabled = true;  // factorization asks for closed normal cores
  Strategy strategy = Strategy::LeftmostOutermost;
  uint64_t seed = 0;                // RandomSeeded only
  int fuel = 10000;                 // step budget; also bounds normality checks
};

struct TraceStep {
  RuleId rule;
  std::vector<int> pos;  // path of child indices from the root
  TermPtr after;         // canonical term after the step
};

enum class Outcome : unsigned char { Normal, FuelExhausted };

struct ReductionTrace {
  TermPtr initial;  // canonical starting term
  std::vector<TraceStep> steps;
  TermPtr final;
  Outcome outcome = Outcome::Normal;
  int fuel_used = 0;

  // One JSON object per step: {"rule":"application/3","pos":[0,1],"term":"..."}
  std::string to_json_lines() const;
};

// A redex found in a canonical term.
struct Redex {
  RuleId rule;
  std::vector<int> pos;
};

// All redexes of the untyped calculus in t (canonical, AC mode), in
// pre-order; per node, rules are tested Beta, Elementary, Factorization,
// Application and only the first matching factorization pair is listed.
std::vector<Redex> find_redexes(const TermPtr& t, const EngineConfig& cfg);

// Applies the identified rule at the position; throws EvalError if it does
// not match there. Result is canonical. Deterministic, so recorded traces
// replay exactly.
TermPtr apply_rule_at(const TermPtr& t, const RuleId& rule, const std::vector<int>& pos,
                      const EngineConfig& cfg);

// One strategy-chosen step on the canonical form of t; nullopt if t is
// normal. RandomSeeded draws from cfg.seed alone, so repeated calls on the
// same term pick the same redex; normalize threads one generator through the
// whole run instead.
std::optional<TraceStep> step(const TermPtr& t, const EngineConfig& cfg);

// Reduces until normal or out of fuel, recording every step.
ReductionTrace normalize(const TermPtr& t, const EngineConfig& cfg);

// True iff t (canonical) has no redex under cfg. The factorization
// restriction consults the same predicate on subterms; the search is bounded
// by cfg.fuel node visits and reports "not normal" when the bound trips.
bool is_normal(const TermPtr& t, const EngineConfig& cfg);

// Y_b for a closed b: (\x.(x x + b)) (\x.(x x + b)). One beta step grows it
// to Y_b + b, the calculus's standard divergence witness.
TermPtr diverges_witness(const TermPtr& b);

}  // namespace lineal
