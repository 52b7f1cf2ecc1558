#include "lineal/canon.hpp"

#include <algorithm>

#include "lineal/errors.hpp"

namespace lineal {

namespace {

// Binder environment: name -> de-Bruijn-style depth, innermost last.
using Env = std::vector<std::pair<std::string, int>>;

int lookup(const Env& env, const std::string& name) {
  for (auto it = env.rbegin(); it != env.rend(); ++it)
    if (it->first == name) return it->second;
  return -1;
}

int cmp_int(long a, long b) { return a < b ? -1 : (a > b ? 1 : 0); }

int compare_rec(const TermPtr& a, const Env& ea, const TermPtr& b, const Env& eb, int depth) {
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  switch (a->kind) {
    case TermKind::Var: {
      int da = lookup(ea, a->name);
      int db = lookup(eb, b->name);
      bool ba = da >= 0, bb = db >= 0;
      if (ba != bb) return ba ? -1 : 1;  // bound before free
      if (ba) return cmp_int(da, db);
      return a->name.compare(b->name) < 0 ? -1 : (a->name == b->name ? 0 : 1);
    }
    case TermKind::Abs: {
      bool ha = a->ann != nullptr, hb = b->ann != nullptr;
      if (ha != hb) return ha ? 1 : -1;  // unannotated first
      if (ha) {
        int c = type_order(a->ann, b->ann);
        if (c != 0) return c;
      }
      Env ea2 = ea, eb2 = eb;
      ea2.emplace_back(a->name, depth);
      eb2.emplace_back(b->name, depth);
      return compare_rec(a->kids[0], ea2, b->kids[0], eb2, depth + 1);
    }
    case TermKind::Scale: {
      // Child before weight, so sorted sums list basis order, not amplitude.
      int c = compare_rec(a->kids[0], ea, b->kids[0], eb, depth);
      if (c != 0) return c;
      return scalar_order(a->weight, b->weight);
    }
    case TermKind::Meas:
      return cmp_int(a->arity, b->arity);
    case TermKind::DeltaPar:
    case TermKind::DeltaMeas: {
      int c = compare_rec(a->kids[0], ea, b->kids[0], eb, depth);
      if (c != 0) return c;
      Env ea2 = ea, eb2 = eb;
      ea2.emplace_back(a->name, depth);
      eb2.emplace_back(b->name, depth);
      c = compare_rec(a->kids[1], ea2, b->kids[1], eb2, depth + 1);
      if (c != 0) return c;
      Env ea3 = ea, eb3 = eb;
      ea3.emplace_back(a->name2, depth);
      eb3.emplace_back(b->name2, depth);
      return compare_rec(a->kids[2], ea3, b->kids[2], eb3, depth + 1);
    }
    default: {
      int c = cmp_int(static_cast<long>(a->kids.size()), static_cast<long>(b->kids.size()));
      if (c != 0) return c;
      for (std::size_t i = 0; i < a->kids.size(); ++i) {
        c = compare_rec(a->kids[i], ea, b->kids[i], eb, depth);
        if (c != 0) return c;
      }
      return 0;
    }
  }
}

TermPtr canon_rec(const TermPtr& t, SumMode mode, Env& env, int depth) {
  switch (t->kind) {
    case TermKind::Var:
    case TermKind::Zero:
    case TermKind::Ket0:
    case TermKind::Ket1:
    case TermKind::Meas:
    case TermKind::Star:
      return t;
    case TermKind::Abs: {
      env.emplace_back(t->name, depth);
      TermPtr body = canon_rec(t->kids[0], mode, env, depth + 1);
      env.pop_back();
      if (body == t->kids[0]) return t;
      return with_kids(t, {body});
    }
    case TermKind::DeltaPar:
    case TermKind::DeltaMeas: {
      TermPtr scrut = canon_rec(t->kids[0], mode, env, depth);
      env.emplace_back(t->name, depth);
      TermPtr left = canon_rec(t->kids[1], mode, env, depth + 1);
      env.pop_back();
      env.emplace_back(t->name2, depth);
      TermPtr right = canon_rec(t->kids[2], mode, env, depth + 1);
      env.pop_back();
      if (scrut == t->kids[0] && left == t->kids[1] && right == t->kids[2]) return t;
      return with_kids(t, {scrut, left, right});
    }
    case TermKind::Sum:
    case TermKind::Parallel: {
      std::vector<TermPtr> kids;
      kids.reserve(t->kids.size());
      bool flatten = mode == SumMode::Ac;
      for (const auto& k : t->kids) {
        TermPtr c = canon_rec(k, mode, env, depth);
        if (flatten && c->kind == t->kind)
          kids.insert(kids.end(), c->kids.begin(), c->kids.end());
        else
          kids.push_back(std::move(c));
      }
      if (flatten) {
        const Env& e = env;
        std::stable_sort(kids.begin(), kids.end(),
                         [&e, depth](const TermPtr& x, const TermPtr& y) {
                           return compare_rec(x, e, y, e, depth) < 0;
                         });
      }
      return with_kids(t, std::move(kids));
    }
    default: {
      std::vector<TermPtr> kids;
      kids.reserve(t->kids.size());
      bool changed = false;
      for (const auto& k : t->kids) {
        TermPtr c = canon_rec(k, mode, env, depth);
        changed = changed || c != k;
        kids.push_back(std::move(c));
      }
      if (!changed) return t;
      return with_kids(t, std::move(kids));
    }
  }
}

bool eq_rec(const TermPtr& a, const Env& ea, const TermPtr& b, const Env& eb, int depth) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TermKind::Var: {
      int da = lookup(ea, a->name);
      int db = lookup(eb, b->name);
      if ((da >= 0) != (db >= 0)) return false;
      return da >= 0 ? da == db : a->name == b->name;
    }
    case TermKind::Abs: {
      if ((a->ann != nullptr) != (b->ann != nullptr)) return false;
      if (a->ann && !type_eq(a->ann, b->ann)) return false;
      Env ea2 = ea, eb2 = eb;
      ea2.emplace_back(a->name, depth);
      eb2.emplace_back(b->name, depth);
      return eq_rec(a->kids[0], ea2, b->kids[0], eb2, depth + 1);
    }
    case TermKind::Scale:
      return a->weight.approx_eq(b->weight) && eq_rec(a->kids[0], ea, b->kids[0], eb, depth);
    case TermKind::Meas:
      return a->arity == b->arity;
    case TermKind::DeltaPar:
    case TermKind::DeltaMeas: {
      if (!eq_rec(a->kids[0], ea, b->kids[0], eb, depth)) return false;
      Env ea2 = ea, eb2 = eb;
      ea2.emplace_back(a->name, depth);
      eb2.emplace_back(b->name, depth);
      if (!eq_rec(a->kids[1], ea2, b->kids[1], eb2, depth + 1)) return false;
      Env ea3 = ea, eb3 = eb;
      ea3.emplace_back(a->name2, depth);
      eb3.emplace_back(b->name2, depth);
      return eq_rec(a->kids[2], ea3, b->kids[2], eb3, depth + 1);
    }
    case TermKind::Sum:
    case TermKind::Parallel: {
      if (a->kids.size() != b->kids.size()) return false;
      std::size_t n = a->kids.size();
      bool pairwise = true;
      for (std::size_t i = 0; i < n; ++i)
        if (!eq_rec(a->kids[i], ea, b->kids[i], eb, depth)) {
          pairwise = false;
          break;
        }
      if (pairwise) return true;
      // Entries with epsilon-close scalars can sort differently on the two
      // sides; fall back to multiset matching.
      std::vector<bool> used(n, false);
      for (std::size_t i = 0; i < n; ++i) {
        bool found = false;
        for (std::size_t j = 0; j < n; ++j) {
          if (used[j]) continue;
          if (eq_rec(a->kids[i], ea, b->kids[j], eb, depth)) {
            used[j] = true;
            found = true;
            break;
          }
        }
        if (!found) return false;
      }
      return true;
    }
    default: {
      if (a->kids.size() != b->kids.size()) return false;
      for (std::size_t i = 0; i < a->kids.size(); ++i)
        if (!eq_rec(a->kids[i], ea, b->kids[i], eb, depth)) return false;
      return true;
    }
  }
}

}  // namespace

int term_compare(const TermPtr& a, const TermPtr& b) {
  return compare_rec(a, Env{}, b, Env{}, 0);
}

TermPtr canonicalize(const TermPtr& t, SumMode mode) {
  Env env;
  return canon_rec(t, mode, env, 0);
}

bool alpha_ac_eq(const TermPtr& a, const TermPtr& b) {
  TermPtr ca = canonicalize(a, SumMode::Ac);
  TermPtr cb = canonicalize(b, SumMode::Ac);
  return eq_rec(ca, Env{}, cb, Env{}, 0);
}

LinearForm LinearForm::from_term(const TermPtr& t) {
  LinearForm lf;
  struct Walker {
    LinearForm& lf;
    void walk(const TermPtr& u, Scalar coeff) {
      switch (u->kind) {
        case TermKind::Sum:
          for (const auto& k : u->kids) walk(k, coeff);
          return;
        case TermKind::Scale:
          walk(u->kids[0], coeff * u->weight);
          return;
        case TermKind::Zero:
          return;
        default:
          lf.add(coeff, u);
      }
    }
  } w{lf};
  w.walk(t, Scalar::one());
  // merge already happened in add; drop epsilon-dust
  std::vector<std::pair<Scalar, TermPtr>> kept;
  for (auto& e : lf.entries)
    if (e.first.abs() > kEpsilon) kept.push_back(std::move(e));
  lf.entries = std::move(kept);
  return lf;
}

void LinearForm::add(Scalar coeff, const TermPtr& base) {
  for (auto& e : entries) {
    if (alpha_ac_eq(e.second, base)) {
      e.first = e.first + coeff;
      return;
    }
  }
  entries.emplace_back(coeff, base);
}

void LinearForm::scale(Scalar s) {
  for (auto& e : entries) e.first = e.first * s;
}

double LinearForm::norm2() const {
  double n = 0.0;
  for (const auto& e : entries) n += e.first.norm2();
  return n;
}

TermPtr LinearForm::to_term() const {
  if (entries.empty()) return t_zero();
  std::vector<TermPtr> kids;
  kids.reserve(entries.size());
  for (const auto& e : entries) {
    // An exact unit weight adds nothing; emit the bare base term.
    if (e.first.re == 1.0 && e.first.im == 0.0)
      kids.push_back(e.second);
    else
      kids.push_back(t_scale(e.first, e.second));
  }
  if (kids.size() == 1) return canonicalize(kids[0]);
  return canonicalize(t_sum(std::move(kids)));
}

}  // namespace lineal
