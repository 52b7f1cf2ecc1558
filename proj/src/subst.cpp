#include "lineal/subst.hpp"

namespace lineal {

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string name = base + "'";
  while (avoid.count(name)) name += "'";
  return name;
}

namespace {

TermPtr subst_rec(const TermPtr& t, const std::string& name, const TermPtr& repl,
                  const std::set<std::string>& repl_fv);

// Renames binder slot `binder` of t's child at index if capture threatens,
// then substitutes below it. Returns the new child body and binder name.
std::pair<std::string, TermPtr> subst_under_binder(const std::string& binder,
                                                   const TermPtr& body, const std::string& name,
                                                   const TermPtr& repl,
                                                   const std::set<std::string>& repl_fv) {
  if (binder == name) return {binder, body};  // shadowed: stop
  if (repl_fv.count(binder) && count_occurrences(body, name) > 0) {
    std::set<std::string> avoid = free_vars(body);
    avoid.insert(repl_fv.begin(), repl_fv.end());
    avoid.insert(name);
    std::string renamed = fresh_name(binder, avoid);
    std::set<std::string> var_fv = {renamed};
    TermPtr body2 = subst_rec(body, binder, t_var(renamed), var_fv);
    return {renamed, subst_rec(body2, name, repl, repl_fv)};
  }
  return {binder, subst_rec(body, name, repl, repl_fv)};
}

TermPtr subst_rec(const TermPtr& t, const std::string& name, const TermPtr& repl,
                  const std::set<std::string>& repl_fv) {
  switch (t->kind) {
    case TermKind::Var:
      return t->name == name ? repl : t;
    case TermKind::Abs: {
      auto [binder, body] = subst_under_binder(t->name, t->kids[0], name, repl, repl_fv);
      if (binder == t->name && body == t->kids[0]) return t;
      return t_abs(binder, t->ann, body);
    }
    case TermKind::DeltaPar:
    case TermKind::DeltaMeas: {
      TermPtr scrut = subst_rec(t->kids[0], name, repl, repl_fv);
      auto [bx, left] = subst_under_binder(t->name, t->kids[1], name, repl, repl_fv);
      auto [by, right] = subst_under_binder(t->name2, t->kids[2], name, repl, repl_fv);
      if (scrut == t->kids[0] && bx == t->name && left == t->kids[1] && by == t->name2 &&
          right == t->kids[2])
        return t;
      return t->kind == TermKind::DeltaPar ? t_dpar(scrut, bx, left, by, right)
                                           : t_dmeas(scrut, bx, left, by, right);
    }
    default: {
      if (t->kids.empty()) return t;
      std::vector<TermPtr> kids;
      kids.reserve(t->kids.size());
      bool changed = false;
      for (const auto& k : t->kids) {
        TermPtr c = subst_rec(k, name, repl, repl_fv);
        changed = changed || c != k;
        kids.push_back(std::move(c));
      }
      if (!changed) return t;
      return with_kids(t, std::move(kids));
    }
  }
}

}  // namespace

TermPtr substitute(const TermPtr& t, const std::string& name, const TermPtr& replacement,
                   SumMode mode) {
  std::set<std::string> repl_fv = free_vars(replacement);
  return canonicalize(subst_rec(t, name, replacement, repl_fv), mode);
}

}  // namespace lineal
