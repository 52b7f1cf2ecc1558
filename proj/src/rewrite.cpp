#include "lineal/rewrite.hpp"

#include <json.hpp>

#include "lineal/errors.hpp"
#include "lineal/printer.hpp"
#include "lineal/subst.hpp"

namespace lineal {

std::string RuleId::to_string() const {
  const char* g = "";
  switch (group) {
    case RuleGroup::Beta: g = "beta"; break;
    case RuleGroup::Elementary: g = "elementary"; break;
    case RuleGroup::Factorization: g = "factorization"; break;
    case RuleGroup::Application: g = "application"; break;
    case RuleGroup::BetaS: g = "beta-s"; break;
    case RuleGroup::Conditional: g = "conditional"; break;
  }
  return std::string(g) + "/" + std::to_string(index);
}

std::string ReductionTrace::to_json_lines() const {
  std::string out;
  for (const auto& s : steps) {
    nlohmann::ordered_json j;
    j["rule"] = s.rule.to_string();
    j["pos"] = s.pos;
    j["term"] = pretty(s.after);
    out += j.dump();
    out += "\n";
  }
  return out;
}

namespace {

// Redex search shared by the strategies and the factorization restriction.
// The restriction's normality question recurses through the same search; the
// visit budget bounds that recursion, and running out is reported as "not
// known normal", which blocks the factorization step (conservative).
struct Search {
  const EngineConfig& cfg;
  long budget;

  explicit Search(const EngineConfig& c)
      : cfg(c), budget(std::max(10000L, static_cast<long>(c.fuel) * 100L)) {}

  bool spend() {
    if (budget <= 0) return false;
    --budget;
    return true;
  }

  // True iff t is closed and provably normal within the budget.
  bool restriction_ok(const TermPtr& t) {
    if (!cfg.restriction_enabled) return true;
    if (!is_closed(t)) return false;
    std::vector<Redex> found;
    std::vector<int> path;
    bool complete = find(t, path, found, true);
    return complete && found.empty();
  }

  // Finds a factorization redex among the entries of a canonical sum:
  // first (i, j) pair in index order. Returns the rule index or -1.
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
            case 0:  // a.t + b.t
              if (!(sa && sb) || !alpha_ac_eq(a->kids[0], b->kids[0])) continue;
              core = a->kids[0];
              break;
            case 1:  // a.t + t
              if (sa == sb) continue;
              core = sa ? a->kids[0] : b->kids[0];
              if (!alpha_ac_eq(core, sa ? b : a)) continue;
              break;
            case 2:  // t + t
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

  // Rule candidates at one node, in group order.
  void match_node(const TermPtr& t, std::vector<RuleId>& out) {
    switch (t->kind) {
      case TermKind::App: {
        const TermPtr& f = t->kids[0];
        const TermPtr& a = t->kids[1];
        if (f->kind == TermKind::Abs && is_basis_term(a))
          out.push_back({RuleGroup::Beta, 0});
        if (f->kind == TermKind::Sum) out.push_back({RuleGroup::Application, 0});
        if (f->kind == TermKind::Scale) out.push_back({RuleGroup::Application, 1});
        if (f->kind == TermKind::Zero) out.push_back({RuleGroup::Application, 2});
        if (a->kind == TermKind::Sum) out.push_back({RuleGroup::Application, 3});
        if (a->kind == TermKind::Scale) out.push_back({RuleGroup::Application, 4});
        if (a->kind == TermKind::Zero) out.push_back({RuleGroup::Application, 5});
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
      default:
        return;
    }
  }

  // Pre-order walk. Returns false when the budget tripped (results
  // incomplete). With first_only, stops after one redex.
  bool find(const TermPtr& t, std::vector<int>& path, std::vector<Redex>& out,
            bool first_only) {
    if (!spend()) return false;
    std::vector<RuleId> here;
    match_node(t, here);
    for (const auto& r : here) {
      out.push_back({r, path});
      if (first_only) return true;
    }
    for (std::size_t i = 0; i < t->kids.size(); ++i) {
      path.push_back(static_cast<int>(i));
      bool ok = find(t->kids[i], path, out, first_only);
      path.pop_back();
      if (!ok) return false;
      if (first_only && !out.empty()) return true;
    }
    return true;
  }
};

TermPtr apply_at_node(const TermPtr& t, const RuleId& rule, Search& search) {
  auto mismatch = [&]() -> EvalError {
    return EvalError("rule " + rule.to_string() + " does not match " + pretty(t));
  };
  switch (rule.group) {
    case RuleGroup::Beta: {
      if (t->kind != TermKind::App) throw mismatch();
      const TermPtr& f = t->kids[0];
      if (f->kind != TermKind::Abs || !is_basis_term(t->kids[1])) throw mismatch();
      return substitute(f->kids[0], f->name, t->kids[1]);
    }
    case RuleGroup::Elementary:
      switch (rule.index) {
        case 0: {  // t + 0 -> t
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
          if (t->kind != TermKind::Scale || !t->weight.approx_zero()) throw mismatch();
          return t_zero();
        case 2:
          if (t->kind != TermKind::Scale || !t->weight.approx_one()) throw mismatch();
          return t->kids[0];
        case 3:
          if (t->kind != TermKind::Scale || t->kids[0]->kind != TermKind::Zero)
            throw mismatch();
          return t_zero();
        case 4: {
          if (t->kind != TermKind::Scale || t->kids[0]->kind != TermKind::Scale)
            throw mismatch();
          const TermPtr& inner = t->kids[0];
          return t_scale(t->weight * inner->weight, inner->kids[0]);
        }
        case 5: {
          if (t->kind != TermKind::Scale || t->kids[0]->kind != TermKind::Sum)
            throw mismatch();
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
      int found = search.factorization_pair(t, i, j);
      if (found != rule.index) throw mismatch();
      const TermPtr& a = t->kids[i];
      const TermPtr& b = t->kids[j];
      TermPtr merged;
      switch (rule.index) {
        case 0:
          merged = t_scale(a->weight + b->weight, a->kids[0]);
          break;
        case 1: {
          bool sa = a->kind == TermKind::Scale;
          const TermPtr& scaled = sa ? a : b;
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
          if (f->kind != TermKind::Sum) throw mismatch();
          std::vector<TermPtr> kids;
          for (const auto& k : f->kids) kids.push_back(t_app(k, a));
          return t_sum(std::move(kids));
        }
        case 1:
          if (f->kind != TermKind::Scale) throw mismatch();
          return t_scale(f->weight, t_app(f->kids[0], a));
        case 2:
          if (f->kind != TermKind::Zero) throw mismatch();
          return t_zero();
        case 3: {
          if (a->kind != TermKind::Sum) throw mismatch();
          std::vector<TermPtr> kids;
          for (const auto& k : a->kids) kids.push_back(t_app(f, k));
          return t_sum(std::move(kids));
        }
        case 4:
          if (a->kind != TermKind::Scale) throw mismatch();
          return t_scale(a->weight, t_app(f, a->kids[0]));
        case 5:
          if (a->kind != TermKind::Zero) throw mismatch();
          return t_zero();
        default:
          throw mismatch();
      }
    }
    default:
      throw mismatch();
  }
}

std::optional<TraceStep> step_inner(const TermPtr& canon, const EngineConfig& cfg, Rng* rng) {
  Search search(cfg);
  std::vector<Redex> redexes;
  std::vector<int> path;
  bool first_only = cfg.strategy == Strategy::LeftmostOutermost;
  search.find(canon, path, redexes, first_only);
  if (redexes.empty()) return std::nullopt;
  const Redex* chosen = &redexes.front();
  if (cfg.strategy == Strategy::RandomSeeded)
    chosen = &redexes[rng->next_below(redexes.size())];
  TermPtr replaced = apply_rule_at(canon, chosen->rule, chosen->pos, cfg);
  return TraceStep{chosen->rule, chosen->pos, replaced};
}

}  // namespace

std::vector<Redex> find_redexes(const TermPtr& t, const EngineConfig& cfg) {
  Search search(cfg);
  std::vector<Redex> out;
  std::vector<int> path;
  search.find(canonicalize(t), path, out, false);
  return out;
}

TermPtr apply_rule_at(const TermPtr& t, const RuleId& rule, const std::vector<int>& pos,
                      const EngineConfig& cfg) {
  Search search(cfg);
  TermPtr node = subterm_at(t, pos);
  TermPtr rewritten = apply_at_node(node, rule, search);
  return canonicalize(replace_at(t, pos, rewritten));
}

std::optional<TraceStep> step(const TermPtr& t, const EngineConfig& cfg) {
  Rng rng(cfg.seed);
  return step_inner(canonicalize(t), cfg, &rng);
}

ReductionTrace normalize(const TermPtr& t, const EngineConfig& cfg) {
  ReductionTrace trace;
  TermPtr cur = canonicalize(t);
  trace.initial = cur;
  Rng rng(cfg.seed);
  for (;;) {
    std::optional<TraceStep> s = step_inner(cur, cfg, &rng);
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

bool is_normal(const TermPtr& t, const EngineConfig& cfg) {
  Search search(cfg);
  std::vector<Redex> out;
  std::vector<int> path;
  search.find(canonicalize(t), path, out, true);
  return out.empty();
}

TermPtr diverges_witness(const TermPtr& b) {
  if (!is_closed(b)) throw EvalError("divergence witness needs a closed payload");
  TermPtr delta = t_abs("x", t_sum2(t_app(t_var("x"), t_var("x")), b));
  return t_app(delta, delta);
}

}  // namespace lineal
