#include "lineal/odot.hpp"

#include "lineal/canon.hpp"
#include "lineal/errors.hpp"
#include "lineal/printer.hpp"
#include "lineal/subst.hpp"

namespace lineal {

namespace {

// Multiplies out any stack of scale layers.
std::pair<Scalar, TermPtr> peel_scales(const TermPtr& t) {
  Scalar w = Scalar::one();
  TermPtr cur = t;
  while (cur->kind == TermKind::Scale) {
    w = w * cur->weight;
    cur = cur->kids[0];
  }
  return {w, cur};
}

struct Intro {
  Scalar a;
  TermPtr left;
  Scalar b;
  TermPtr right;
};

// Reads a (possibly scaled) ordered pair a.t + b.r; bare components count as
// coefficient 1.
std::optional<Intro> split_intro(const TermPtr& t) {
  auto [w, core] = peel_scales(t);
  if (core->kind != TermKind::Sum || core->kids.size() != 2) return std::nullopt;
  auto [a, l] = peel_scales(core->kids[0]);
  auto [b, r] = peel_scales(core->kids[1]);
  return Intro{w * a, l, w * b, r};
}

// Ordered-sum alpha equality; exact on scalars, which is all merging needs.
bool odot_eq(const TermPtr& a, const TermPtr& b) {
  return term_compare(canonicalize(a, SumMode::Ordered), canonicalize(b, SumMode::Ordered)) == 0;
}

TermPtr rescale(const Scalar& w, const TermPtr& core) {
  if (w.approx_one()) return core;
  return t_scale(w, core);
}

// Vectorial-sum reading of a parallel: flatten, add coefficients of equal
// components, add equal-shape intro pairs position-wise, drop zeros.
TermPtr merge_parallel_node(const std::vector<TermPtr>& kids) {
  std::vector<std::pair<Scalar, TermPtr>> entries;
  std::vector<TermPtr> stack(kids.rbegin(), kids.rend());
  while (!stack.empty()) {
    TermPtr k = stack.back();
    stack.pop_back();
    auto [w, core] = peel_scales(k);
    if (core->kind == TermKind::Parallel) {
      for (auto it = core->kids.rbegin(); it != core->kids.rend(); ++it)
        stack.push_back(rescale(w, *it));
      continue;
    }
    if (core->kind == TermKind::Zero || w.approx_zero()) continue;
    bool merged = false;
    for (auto& [ew, ecore] : entries) {
      if (odot_eq(ecore, core)) {
        ew = ew + w;
        merged = true;
        break;
      }
      auto ei = split_intro(ecore);
      auto ni = split_intro(core);
      if (ei && ni && odot_eq(ei->left, ni->left) && odot_eq(ei->right, ni->right)) {
        Scalar na = ei->a * ew + ni->a * w;
        Scalar nb = ei->b * ew + ni->b * w;
        ecore = t_sum2(rescale(na, ei->left), rescale(nb, ei->right));
        ew = Scalar::one();
        merged = true;
        break;
      }
    }
    if (!merged) entries.push_back({w, core});
  }
  std::vector<TermPtr> out;
  for (const auto& [w, core] : entries) {
    if (w.approx_zero()) continue;
    out.push_back(rescale(w, core));
  }
  if (out.empty()) return t_zero();
  if (out.size() == 1) return out[0];
  return t_parallel(std::move(out));
}

TermPtr merge_tree(const TermPtr& t) {
  std::vector<TermPtr> kids;
  kids.reserve(t->kids.size());
  bool changed = false;
  for (const auto& k : t->kids) {
    TermPtr m = merge_tree(k);
    changed = changed || m != k;
    kids.push_back(std::move(m));
  }
  TermPtr cur = changed ? with_kids(t, std::move(kids)) : t;
  if (cur->kind == TermKind::Parallel) return merge_parallel_node(cur->kids);
  return cur;
}

// One leftmost-outermost step: beta, dpar on an introduced scrutinee, dmeas
// on one when a generator is present. Returns nullopt when stuck.
std::optional<TermPtr> step_once(const TermPtr& t, Rng* rng) {
  if (t->kind == TermKind::App && t->kids[0]->kind == TermKind::Abs) {
    const TermPtr& f = t->kids[0];
    return substitute(f->kids[0], f->name, t->kids[1], SumMode::Ordered);
  }
  if (t->kind == TermKind::DeltaPar) {
    if (auto in = split_intro(t->kids[0])) {
      TermPtr left = t_scale(in->a, substitute(t->kids[1], t->name, in->left, SumMode::Ordered));
      TermPtr right =
          t_scale(in->b, substitute(t->kids[2], t->name2, in->right, SumMode::Ordered));
      return t_parallel({left, right});
    }
  }
  if (t->kind == TermKind::DeltaMeas && rng) {
    if (auto in = split_intro(t->kids[0])) {
      double wa = in->a.norm2();
      double wb = in->b.norm2();
      if (wa + wb <= kEpsilon)
        throw DegenerateMeasurement("eliminated pair has weight " + std::to_string(wa + wb));
      bool pick_left = rng->next_double() < wa / (wa + wb);
      if (pick_left) return substitute(t->kids[1], t->name, in->left, SumMode::Ordered);
      return substitute(t->kids[2], t->name2, in->right, SumMode::Ordered);
    }
  }
  for (std::size_t i = 0; i < t->kids.size(); ++i) {
    if (auto s = step_once(t->kids[i], rng)) {
      std::vector<TermPtr> kids = t->kids;
      kids[i] = std::move(*s);
      return with_kids(t, std::move(kids));
    }
  }
  return std::nullopt;
}

TermPtr normalize_loop(const TermPtr& t, Rng* rng, int fuel, bool merge) {
  TermPtr cur = canonicalize(t, SumMode::Ordered);
  if (merge) cur = merge_tree(cur);
  for (int used = 0;; ++used) {
    std::optional<TermPtr> next = step_once(cur, rng);
    if (!next) return cur;
    if (used >= fuel) throw FuelError("fuel exhausted: " + pretty(cur));
    cur = canonicalize(*next, SumMode::Ordered);
    if (merge) cur = merge_tree(cur);
  }
}

}  // namespace

TermPtr reduce_parallel_raw(const TermPtr& t, int fuel) {
  if (t->kind != TermKind::DeltaPar)
    throw EvalError("expected a dpar at the root, got " + pretty(t));
  TermPtr scrut = normalize_loop(t->kids[0], nullptr, fuel, true);
  auto in = split_intro(scrut);
  if (!in) throw EvalError("eliminated term is not an introduced pair: " + pretty(scrut));
  TermPtr left = t_scale(in->a, substitute(t->kids[1], t->name, in->left, SumMode::Ordered));
  TermPtr right = t_scale(in->b, substitute(t->kids[2], t->name2, in->right, SumMode::Ordered));
  return t_parallel({left, right});
}

TermPtr reduce_parallel(const TermPtr& t, int fuel) {
  return merge_tree(reduce_parallel_raw(t, fuel));
}

TermPtr reduce_measure(const TermPtr& t, Rng& rng, int fuel) {
  if (t->kind != TermKind::DeltaMeas)
    throw EvalError("expected a dmeas at the root, got " + pretty(t));
  TermPtr scrut = normalize_loop(t->kids[0], &rng, fuel, true);
  auto in = split_intro(scrut);
  if (!in) throw EvalError("eliminated term is not an introduced pair: " + pretty(scrut));
  double wa = in->a.norm2();
  double wb = in->b.norm2();
  if (wa + wb <= kEpsilon)
    throw DegenerateMeasurement("eliminated pair has weight " + std::to_string(wa + wb));
  bool pick_left = rng.next_double() < wa / (wa + wb);
  if (pick_left) return substitute(t->kids[1], t->name, in->left, SumMode::Ordered);
  return substitute(t->kids[2], t->name2, in->right, SumMode::Ordered);
}

TermPtr odot_normalize(const TermPtr& t, Rng* rng, int fuel) {
  return normalize_loop(t, rng, fuel, true);
}

std::optional<std::pair<Scalar, Scalar>> odot_qubit_amplitudes(const TermPtr& t) {
  TermPtr merged = merge_tree(canonicalize(t, SumMode::Ordered));
  if (merged->kind == TermKind::Zero) return std::make_pair(Scalar::zero(), Scalar::zero());
  auto in = split_intro(merged);
  if (!in) return std::nullopt;
  if (in->left->kind != TermKind::Star || in->right->kind != TermKind::Star)
    return std::nullopt;
  return std::make_pair(in->a, in->b);
}

}  // namespace lineal
