#include "lineal/typed_eval.hpp"

#include <algorithm>
#include <json.hpp>

#include "lineal/errors.hpp"
#include "lineal/printer.hpp"
#include "lineal/subst.hpp"
#include "lineal/typecheck.hpp"

namespace lineal {

namespace {

// Typed redex search. Mirrors the untyped engine but
//   - splits beta by the binder's domain: base domains take basis arguments
//     (beta/0), S domains take anything in one step (beta-s/0);
//   - fires the argument-side application rules only under functions whose
//     domain is a base type, so superpositions reach S-typed functions and
//     pi unsplit;
//   - adds the conditional group at if nodes.
// The factorization restriction uses this same (typed) notion of normality.
struct TypedSearch {
  const EngineConfig& cfg;
  long budget;

  explicit TypedSearch(const EngineConfig& c)
      : cfg(c), budget(std::max(10000L, static_cast<long>(c.fuel) * 100L)) {}

  bool spend() {
    if (budget <= 0) return false;
    --budget;
    return true;
  }

  bool restriction_ok(const TermPtr& t) {
    if (!cfg.restriction_enabled) return true;
    if (!is_closed(t)) return false;
    std::vector<Redex> found;
    std::vector<int> path;
    TypingContext empty;
    bool complete = find(t, empty, path, found, true);
    return complete && found.empty();
  }

  int factorization_pair(const TermPtr& sum, std::size_t& oi, std::size_t& oj) {
    const auto& ks = sum->kids;
    for (int rule = 0; rule <= 2; ++rule) {
      for (std::size_t i = 0; i + 1 < ks.size(); ++i) {
        for (std::size_t j = i + 1; j < ks.size(); ++j) {
          const TermPtr& a = ks[i];
          const TermPtr& b = ks[j];
          bool sa = a->kind == TermKind::Scale;
          bool sb = b->kind == TermKind::Scale;
          TermPtr core;
          switch (rule) {
            case 0:
              if (!(sa && sb) || !alpha_ac_eq(a->kids[0], b->kids[0])) continue;
              core = a->kids[0];
              break;
            case 1:
              if (sa == sb) continue;
              core = sa ? a->kids[0] : b->kids[0];
              if (!alpha_ac_eq(core, sa ? b : a)) continue;
              break;
            case 2:
              if (sa || sb || !alpha_ac_eq(a, b)) continue;
              core = a;
              break;
          }
          if (!restriction_ok(core)) continue;
          oi = i;
          oj = j;
          return rule;
        }
      }
    }
    return -1;
  }

  // Domain of the function side of an application, through an S layer; null
  // when the type is not (an S of) an arrow or does not typecheck.
  TypePtr function_domain(const TypingContext& ctx, const TermPtr& f) {
    TypePtr ft;
    try {
      ft = typecheck(ctx, f);
    } catch (const TypeError&) {
      return nullptr;
    }
    if (ft->kind == TypeKind::S && ft->left->kind == TypeKind::Arrow) ft = ft->left;
    if (ft->kind != TypeKind::Arrow) return nullptr;
    return ft->left;
  }

  void match_node(const TermPtr& t, const TypingContext& ctx, std::vector<RuleId>& out) {
    switch (t->kind) {
      case TermKind::App: {
        const TermPtr& f = t->kids[0];
        const TermPtr& a = t->kids[1];
        if (f->kind == TermKind::Abs && f->ann) {
          TypePtr dom = normalize_type(f->ann);
          if (dom->kind == TypeKind::S)
            out.push_back({RuleGroup::BetaS, 0});
          else if (is_basis_term(a))
            out.push_back({RuleGroup::Beta, 0});
        }
        if (f->kind == TermKind::Sum) out.push_back({RuleGroup::Application, 0});
        if (f->kind == TermKind::Scale) out.push_back({RuleGroup::Application, 1});
        if (f->kind == TermKind::Zero) out.push_back({RuleGroup::Application, 2});
        if (a->kind == TermKind::Sum || a->kind == TermKind::Scale ||
            a->kind == TermKind::Zero) {
          TypePtr dom = function_domain(ctx, f);
          if (dom && dom->kind != TypeKind::S) {
            if (a->kind == TermKind::Sum) out.push_back({RuleGroup::Application, 3});
            if (a->kind == TermKind::Scale) out.push_back({RuleGroup::Application, 4});
            if (a->kind == TermKind::Zero) out.push_back({RuleGroup::Application, 5});
          }
        }
        return;
      }
      case TermKind::Scale: {
        const TermPtr& c = t->kids[0];
        if (t->weight.approx_zero()) out.push_back({RuleGroup::Elementary, 1});
        if (t->weight.approx_one()) out.push_back({RuleGroup::Elementary, 2});
        if (c->kind == TermKind::Zero) out.push_back({RuleGroup::Elementary, 3});
        if (c->kind == TermKind::Scale) out.push_back({RuleGroup::Elementary, 4});
        if (c->kind == TermKind::Sum) out.push_back({RuleGroup::Elementary, 5});
        return;
      }
      case TermKind::Sum: {
        for (const auto& k : t->kids)
          if (k->kind == TermKind::Zero) {
            out.push_back({RuleGroup::Elementary, 0});
            break;
          }
        std::size_t i, j;
        int rule = factorization_pair(t, i, j);
        if (rule >= 0) out.push_back({RuleGroup::Factorization, rule});
        return;
      }
      case TermKind::If: {
        const TermPtr& c = t->kids[0];
        if (c->kind == TermKind::Ket1) out.push_back({RuleGroup::Conditional, 0});
        if (c->kind == TermKind::Ket0) out.push_back({RuleGroup::Conditional, 1});
        if (c->kind == TermKind::Sum) out.push_back({RuleGroup::Conditional, 2});
        if (c->kind == TermKind::Scale) out.push_back({RuleGroup::Conditional, 3});
        if (c->kind == TermKind::Zero) out.push_back({RuleGroup::Conditional, 4});
        return;
      }
      default:
        return;
    }
  }

  bool find(const TermPtr& t, const TypingContext& ctx, std::vector<int>& path,
            std::vector<Redex>& out, bool first_only) {
    if (!spend()) return false;
    std::vector<RuleId> here;
    match_node(t, ctx, here);
    for (const auto& r : here) {
      out.push_back({r, path});
      if (first_only) return true;
    }
    for (std::size_t i = 0; i < t->kids.size(); ++i) {
      const TypingContext* inner = &ctx;
      TypingContext extended;
      if (t->kind == TermKind::Abs && i == 0 && t->ann) {
        extended = ctx;
        extended[t->name] = normalize_type(t->ann);
        inner = &extended;
      }
      path.push_back(static_cast<int>(i));
      bool ok = find(t->kids[i], *inner, path, out, first_only);
      path.pop_back();
      if (!ok) return false;
      if (first_only && !out.empty()) return true;
    }
    return true;
  }

  TermPtr apply_node(const TermPtr& t, const RuleId& rule) {
    auto mismatch = [&]() -> EvalError {
      return EvalError("rule " + rule.to_string() + " does not match " + pretty(t));
    };
    switch (rule.group) {
      case RuleGroup::Beta:
      case RuleGroup::BetaS: {
        if (t->kind != TermKind::App || t->kids[0]->kind != TermKind::Abs) throw mismatch();
        const TermPtr& f = t->kids[0];
        return substitute(f->kids[0], f->name, t->kids[1]);
      }
      case RuleGroup::Elementary:
        switch (rule.index) {
          case 0: {
            if (t->kind != TermKind::Sum) throw mismatch();
            std::vector<TermPtr> kids;
            bool removed = false;
            for (const auto& k : t->kids) {
              if (!removed && k->kind == TermKind::Zero) {
                removed = true;
                continue;
              }
              kids.push_back(k);
            }
            if (!removed) throw mismatch();
            if (kids.empty()) return t_zero();
            if (kids.size() == 1) return kids[0];
            return t_sum(std::move(kids));
          }
          case 1:
            return t_zero();
          case 2:
            return t->kids[0];
          case 3:
            return t_zero();
          case 4: {
            const TermPtr& inner = t->kids[0];
            return t_scale(t->weight * inner->weight, inner->kids[0]);
          }
          case 5: {
            std::vector<TermPtr> kids;
            for (const auto& k : t->kids[0]->kids) kids.push_back(t_scale(t->weight, k));
            return t_sum(std::move(kids));
          }
          default:
            throw mismatch();
        }
      case RuleGroup::Factorization: {
        if (t->kind != TermKind::Sum) throw mismatch();
        std::size_t i, j;
        int found = factorization_pair(t, i, j);
        if (found != rule.index) throw mismatch();
        const TermPtr& a = t->kids[i];
        const TermPtr& b = t->kids[j];
        TermPtr merged;
        switch (rule.index) {
          case 0:
            merged = t_scale(a->weight + b->weight, a->kids[0]);
            break;
          case 1: {
            const TermPtr& scaled = a->kind == TermKind::Scale ? a : b;
            merged = t_scale(scaled->weight + Scalar::one(), scaled->kids[0]);
            break;
          }
          case 2:
            merged = t_scale(Scalar(2.0), a);
            break;
          default:
            throw mismatch();
        }
        std::vector<TermPtr> kids;
        for (std::size_t k = 0; k < t->kids.size(); ++k) {
          if (k == j) continue;
          kids.push_back(k == i ? merged : t->kids[k]);
        }
        if (kids.size() == 1) return kids[0];
        return t_sum(std::move(kids));
      }
      case RuleGroup::Application: {
        if (t->kind != TermKind::App) throw mismatch();
        const TermPtr& f = t->kids[0];
        const TermPtr& a = t->kids[1];
        switch (rule.index) {
          case 0: {
            std::vector<TermPtr> kids;
            for (const auto& k : f->kids) kids.push_back(t_app(k, a));
            return t_sum(std::move(kids));
          }
          case 1:
            return t_scale(f->weight, t_app(f->kids[0], a));
          case 2:
            return t_zero();
          case 3: {
            std::vector<TermPtr> kids;
            for (const auto& k : a->kids) kids.push_back(t_app(f, k));
            return t_sum(std::move(kids));
          }
          case 4:
            return t_scale(a->weight, t_app(f, a->kids[0]));
          case 5:
            return t_zero();
          default:
            throw mismatch();
        }
      }
      case RuleGroup::Conditional: {
        if (t->kind != TermKind::If) throw mismatch();
        const TermPtr& c = t->kids[0];
        switch (rule.index) {
          case 0:
            return t->kids[1];
          case 1:
            return t->kids[2];
          case 2: {
            std::vector<TermPtr> kids;
            for (const auto& k : c->kids) kids.push_back(t_if(k, t->kids[1], t->kids[2]));
            return t_sum(std::move(kids));
          }
          case 3:
            return t_scale(c->weight, t_if(c->kids[0], t->kids[1], t->kids[2]));
          case 4:
            return t_zero();
          default:
            throw mismatch();
        }
      }
      default:
        throw mismatch();
    }
  }
};

std::optional<TraceStep> typed_step_inner(const TermPtr& canon, const EngineConfig& cfg,
                                          Rng* rng) {
  TypedSearch search(cfg);
  std::vector<Redex> redexes;
  std::vector<int> path;
  TypingContext empty;
  bool first_only = cfg.strategy == Strategy::LeftmostOutermost;
  search.find(canon, empty, path, redexes, first_only);
  if (redexes.empty()) return std::nullopt;
  const Redex* chosen = &redexes.front();
  if (cfg.strategy == Strategy::RandomSeeded)
    chosen = &redexes[rng->next_below(redexes.size())];
  TermPtr node = subterm_at(canon, chosen->pos);
  TermPtr rewritten = search.apply_node(node, chosen->rule);
  TermPtr after = canonicalize(replace_at(canon, chosen->pos, rewritten));
  return TraceStep{chosen->rule, chosen->pos, after};
}

// Innermost application of a measurement to a measurement-free argument.
bool contains_meas(const TermPtr& t) {
  if (t->kind == TermKind::Meas) return true;
  for (const auto& k : t->kids)
    if (contains_meas(k)) return true;
  return false;
}

bool find_meas_app(const TermPtr& t, std::vector<int>& path) {
  if (t->kind == TermKind::App && t->kids[0]->kind == TermKind::Meas &&
      !contains_meas(t->kids[1])) {
    return true;
  }
  for (std::size_t i = 0; i < t->kids.size(); ++i) {
    path.push_back(static_cast<int>(i));
    if (find_meas_app(t->kids[i], path)) return true;
    path.pop_back();
  }
  return false;
}

// Kets and renormalized probabilities of the state a measurement is applied
// to. The state must be a linear combination of n-qubit kets.
std::vector<OutcomeEntry> ket_distribution(const TermPtr& meas_app) {
  int n = meas_app->kids[0]->arity;
  LinearForm lf = LinearForm::from_term(meas_app->kids[1]);
  double total = 0.0;
  for (const auto& [coeff, base] : lf.entries) {
    auto bits = ket_bits(base);
    if (!bits || static_cast<int>(bits->size()) != n)
      throw EvalError("measured state is not a combination of " + std::to_string(n) +
                      "-qubit kets: " + pretty(meas_app->kids[1]));
    total += coeff.norm2();
  }
  if (total <= kEpsilon)
    throw DegenerateMeasurement("measured state has norm " + std::to_string(total));
  std::vector<OutcomeEntry> out;
  for (const auto& [coeff, base] : lf.entries) {
    double p = coeff.norm2() / total;
    if (p <= kEpsilon) continue;
    out.push_back({base, p});
  }
  std::sort(out.begin(), out.end(), [](const OutcomeEntry& a, const OutcomeEntry& b) {
    return term_compare(a.term, b.term) < 0;
  });
  return out;
}

}  // namespace

std::optional<TraceStep> typed_step(const TermPtr& t, const EngineConfig& cfg) {
  Rng rng(cfg.seed);
  return typed_step_inner(canonicalize(t), cfg, &rng);
}

ReductionTrace typed_normalize(const TermPtr& t, const EngineConfig& cfg) {
  ReductionTrace trace;
  TermPtr cur = canonicalize(t);
  trace.initial = cur;
  Rng rng(cfg.seed);
  for (;;) {
    std::optional<TraceStep> s = typed_step_inner(cur, cfg, &rng);
    if (!s) {
      trace.outcome = Outcome::Normal;
      break;
    }
    if (trace.fuel_used >= cfg.fuel) {
      trace.outcome = Outcome::FuelExhausted;
      break;
    }
    cur = s->after;
    trace.steps.push_back(std::move(*s));
    ++trace.fuel_used;
  }
  trace.final = cur;
  return trace;
}

std::string OutcomeDistribution::to_json() const {
  nlohmann::ordered_json j;
  j["outcomes"] = nlohmann::ordered_json::array();
  for (const auto& o : outcomes) {
    nlohmann::ordered_json e;
    e["term"] = pretty(o.term);
    e["p"] = o.probability;
    j["outcomes"].push_back(e);
  }
  if (seed) j["seed"] = *seed;
  return j.dump();
}

OutcomeDistribution measure_distribution(const TermPtr& t, const EngineConfig& cfg) {
  ReductionTrace trace = typed_normalize(t, cfg);
  if (trace.outcome == Outcome::FuelExhausted)
    throw FuelError("fuel exhausted before the measurement: " + pretty(trace.final));
  const TermPtr& f = trace.final;
  if (f->kind != TermKind::App || f->kids[0]->kind != TermKind::Meas)
    throw EvalError("term does not end at a measurement: " + pretty(f));
  OutcomeDistribution dist;
  dist.outcomes = ket_distribution(f);
  return dist;
}

TermPtr run(const TermPtr& t, uint64_t seed, const EngineConfig& cfg) {
  Rng rng(seed);
  TermPtr cur = canonicalize(t);
  for (;;) {
    ReductionTrace trace = typed_normalize(cur, cfg);
    if (trace.outcome == Outcome::FuelExhausted)
      throw FuelError("fuel exhausted while running: " + pretty(trace.final));
    cur = trace.final;
    std::vector<int> path;
    if (!find_meas_app(cur, path)) return cur;
    TermPtr app = subterm_at(cur, path);
    std::vector<OutcomeEntry> outcomes = ket_distribution(app);
    double r = rng.next_double();
    double acc = 0.0;
    TermPtr picked = outcomes.back().term;
    for (const auto& o : outcomes) {
      acc += o.probability;
      if (r < acc) {
        picked = o.term;
        break;
      }
    }
    cur = canonicalize(replace_at(cur, path, picked));
  }
}

Realization realizes(const TermPtr& t, const TypePtr& a, const EngineConfig& cfg) {
  TypePtr ty = normalize_type(a);
  ReductionTrace trace = typed_normalize(t, cfg);
  if (trace.outcome == Outcome::FuelExhausted) return Realization::Unknown;
  const TermPtr& f = trace.final;
  if (int n = bn_width(ty); n > 0) {
    auto bits = ket_bits(f);
    return bits && static_cast<int>(bits->size()) == n ? Realization::Yes : Realization::No;
  }
  if (ty->kind == TypeKind::S) {
    int n = bn_width(ty->left);
    if (n <= 0) throw EvalError("unsupported realizability type " + type_to_string(a));
    LinearForm lf = LinearForm::from_term(f);
    double total = 0.0;
    for (const auto& [coeff, base] : lf.entries) {
      auto bits = ket_bits(base);
      if (!bits || static_cast<int>(bits->size()) != n) return Realization::No;
      total += coeff.norm2();
    }
    return approx(total, 1.0) ? Realization::Yes : Realization::No;
  }
  throw EvalError("unsupported realizability type " + type_to_string(a));
}

}  // namespace lineal
