#include "lineal/term.hpp"

#include <cassert>
#include <stdexcept>

#include "lineal/errors.hpp"

namespace lineal {

std::string dialect_name(Dialect d) {
  switch (d) {
    case Dialect::Lineal: return "lineal";
    case Dialect::LambdaS: return "lambda-s";
    case Dialect::Odot: return "odot";
  }
  return "?";
}

namespace {

std::shared_ptr<Term> make(TermKind k) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  return t;
}

}  // namespace

TermPtr t_var(std::string name) {
  auto t = make(TermKind::Var);
  t->name = std::move(name);
  return t;
}

TermPtr t_abs(std::string binder, TermPtr body) {
  return t_abs(std::move(binder), nullptr, std::move(body));
}

TermPtr t_abs(std::string binder, TypePtr ann, TermPtr body) {
  auto t = make(TermKind::Abs);
  t->name = std::move(binder);
  t->ann = std::move(ann);
  t->kids.push_back(std::move(body));
  return t;
}

TermPtr t_app(TermPtr fun, TermPtr arg) {
  auto t = make(TermKind::App);
  t->kids.push_back(std::move(fun));
  t->kids.push_back(std::move(arg));
  return t;
}

TermPtr t_scale(Scalar s, TermPtr body) {
  auto t = make(TermKind::Scale);
  t->weight = s;
  t->kids.push_back(std::move(body));
  return t;
}

TermPtr t_sum(std::vector<TermPtr> entries) {
  if (entries.size() < 2) throw EvalError("sum needs at least two entries");
  auto t = make(TermKind::Sum);
  t->kids = std::move(entries);
  return t;
}

TermPtr t_sum2(TermPtr a, TermPtr b) { return t_sum({std::move(a), std::move(b)}); }

TermPtr t_zero() {
  static const TermPtr z = make(TermKind::Zero);
  return z;
}

TermPtr t_ket(int bit) {
  static const TermPtr k0 = make(TermKind::Ket0);
  static const TermPtr k1 = make(TermKind::Ket1);
  return bit ? k1 : k0;
}

TermPtr t_ket_string(const std::string& bits) {
  if (bits.empty()) throw EvalError("empty ket");
  TermPtr t = t_ket(bits.back() == '1');
  for (int i = static_cast<int>(bits.size()) - 2; i >= 0; --i)
    t = t_pair(t_ket(bits[static_cast<std::size_t>(i)] == '1'), t);
  return t;
}

TermPtr t_if(TermPtr cond, TermPtr then_t, TermPtr else_t) {
  auto t = make(TermKind::If);
  t->kids = {std::move(cond), std::move(then_t), std::move(else_t)};
  return t;
}

TermPtr t_pair(TermPtr a, TermPtr b) {
  auto t = make(TermKind::Pair);
  t->kids = {std::move(a), std::move(b)};
  return t;
}

TermPtr t_meas(int arity) {
  if (arity < 1) throw EvalError("measurement arity must be positive");
  auto t = make(TermKind::Meas);
  t->arity = arity;
  return t;
}

TermPtr t_star() {
  static const TermPtr s = make(TermKind::Star);
  return s;
}

namespace {

TermPtr make_delta(TermKind k, TermPtr scrut, std::string x, TermPtr left, std::string y,
                   TermPtr right) {
  auto t = make(k);
  t->name = std::move(x);
  t->name2 = std::move(y);
  t->kids = {std::move(scrut), std::move(left), std::move(right)};
  return t;
}

}  // namespace

TermPtr t_dpar(TermPtr scrut, std::string x, TermPtr left, std::string y, TermPtr right) {
  return make_delta(TermKind::DeltaPar, std::move(scrut), std::move(x), std::move(left),
                    std::move(y), std::move(right));
}

TermPtr t_dmeas(TermPtr scrut, std::string x, TermPtr left, std::string y, TermPtr right) {
  return make_delta(TermKind::DeltaMeas, std::move(scrut), std::move(x), std::move(left),
                    std::move(y), std::move(right));
}

TermPtr t_parallel(std::vector<TermPtr> entries) {
  if (entries.size() < 2) throw EvalError("parallel needs at least two entries");
  auto t = make(TermKind::Parallel);
  t->kids = std::move(entries);
  return t;
}

TermPtr t_thunk(TermPtr body) {
  std::set<std::string> fv = free_vars(body);
  std::string binder = "u";
  int i = 0;
  while (fv.count(binder)) binder = "u" + std::to_string(++i);
  return t_abs(binder, std::move(body));
}

TermPtr t_release(TermPtr thunk) {
  return t_app(std::move(thunk), t_abs("i", t_var("i")));
}

bool kind_in_dialect(TermKind k, Dialect d) {
  switch (k) {
    case TermKind::Var:
    case TermKind::Abs:
    case TermKind::App:
    case TermKind::Scale:
    case TermKind::Sum:
    case TermKind::Zero:
      return true;
    case TermKind::Ket0:
    case TermKind::Ket1:
      return d == Dialect::Lineal || d == Dialect::LambdaS;
    case TermKind::If:
    case TermKind::Pair:
    case TermKind::Meas:
      return d == Dialect::LambdaS;
    case TermKind::Star:
    case TermKind::DeltaPar:
    case TermKind::DeltaMeas:
    case TermKind::Parallel:
      return d == Dialect::Odot;
  }
  return false;
}

namespace {

const char* kind_word(TermKind k) {
  switch (k) {
    case TermKind::Var: return "variable";
    case TermKind::Abs: return "lambda";
    case TermKind::App: return "application";
    case TermKind::Scale: return "scaling";
    case TermKind::Sum: return "sum";
    case TermKind::Zero: return "zero";
    case TermKind::Ket0: return "|0>";
    case TermKind::Ket1: return "|1>";
    case TermKind::If: return "if-then-else";
    case TermKind::Pair: return "pair";
    case TermKind::Meas: return "pi";
    case TermKind::Star: return "*";
    case TermKind::DeltaPar: return "dpar";
    case TermKind::DeltaMeas: return "dmeas";
    case TermKind::Parallel: return "parallel";
  }
  return "?";
}

}  // namespace

std::string dialect_violation(const TermPtr& t, Dialect d) {
  if (!kind_in_dialect(t->kind, d))
    return std::string(kind_word(t->kind)) + " is not part of the " + dialect_name(d) +
           " dialect";
  for (const auto& k : t->kids) {
    std::string v = dialect_violation(k, d);
    if (!v.empty()) return v;
  }
  return "";
}

namespace {

void collect_free(const TermPtr& t, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (t->kind) {
    case TermKind::Var:
      if (!bound.count(t->name)) out.insert(t->name);
      return;
    case TermKind::Abs: {
      bool added = bound.insert(t->name).second;
      collect_free(t->kids[0], bound, out);
      if (added) bound.erase(t->name);
      return;
    }
    case TermKind::DeltaPar:
    case TermKind::DeltaMeas: {
      collect_free(t->kids[0], bound, out);
      bool addedX = bound.insert(t->name).second;
      collect_free(t->kids[1], bound, out);
      if (addedX) bound.erase(t->name);
      bool addedY = bound.insert(t->name2).second;
      collect_free(t->kids[2], bound, out);
      if (addedY) bound.erase(t->name2);
      return;
    }
    default:
      for (const auto& k : t->kids) collect_free(k, bound, out);
  }
}

int count_occ(const TermPtr& t, const std::string& name) {
  switch (t->kind) {
    case TermKind::Var:
      return t->name == name ? 1 : 0;
    case TermKind::Abs:
      return t->name == name ? 0 : count_occ(t->kids[0], name);
    case TermKind::DeltaPar:
    case TermKind::DeltaMeas: {
      int n = count_occ(t->kids[0], name);
      if (t->name != name) n += count_occ(t->kids[1], name);
      if (t->name2 != name) n += count_occ(t->kids[2], name);
      return n;
    }
    default: {
      int n = 0;
      for (const auto& k : t->kids) n += count_occ(k, name);
      return n;
    }
  }
}

}  // namespace

std::set<std::string> free_vars(const TermPtr& t) {
  std::set<std::string> bound, out;
  collect_free(t, bound, out);
  return out;
}

bool is_closed(const TermPtr& t) { return free_vars(t).empty(); }

int count_occurrences(const TermPtr& t, const std::string& name) { return count_occ(t, name); }

bool is_basis_term(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var:
    case TermKind::Abs:
    case TermKind::Ket0:
    case TermKind::Ket1:
      return true;
    case TermKind::Pair:
      return is_basis_term(t->kids[0]) && is_basis_term(t->kids[1]);
    default:
      return false;
  }
}

std::optional<std::string> ket_bits(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Ket0: return "0";
    case TermKind::Ket1: return "1";
    case TermKind::Pair: {
      auto l = ket_bits(t->kids[0]);
      if (!l) return std::nullopt;
      auto r = ket_bits(t->kids[1]);
      if (!r) return std::nullopt;
      return *l + *r;
    }
    default:
      return std::nullopt;
  }
}

TermPtr subterm_at(const TermPtr& t, const std::vector<int>& pos) {
  TermPtr cur = t;
  for (int i : pos) {
    if (i < 0 || static_cast<std::size_t>(i) >= cur->kids.size())
      throw EvalError("position out of range");
    cur = cur->kids[static_cast<std::size_t>(i)];
  }
  return cur;
}

TermPtr with_kids(const TermPtr& t, std::vector<TermPtr> kids) {
  auto n = std::make_shared<Term>(*t);
  n->kids = std::move(kids);
  return n;
}

TermPtr replace_at(const TermPtr& t, const std::vector<int>& pos, TermPtr repl) {
  if (pos.empty()) return repl;
  std::vector<TermPtr> kids = t->kids;
  int i = pos.front();
  if (i < 0 || static_cast<std::size_t>(i) >= kids.size())
    throw EvalError("position out of range");
  std::vector<int> rest(pos.begin() + 1, pos.end());
  kids[static_cast<std::size_t>(i)] = replace_at(kids[static_cast<std::size_t>(i)], rest,
                                                 std::move(repl));
  return with_kids(t, std::move(kids));
}

}  // namespace lineal
