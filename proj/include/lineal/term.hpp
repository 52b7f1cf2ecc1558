#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lineal/scalar.hpp"
#include "lineal/types.hpp"

namespace lineal {

enum class Dialect : unsigned char { Lineal, LambdaS, Odot };

std::string dialect_name(Dialect d);

// One unified term language for all three dialects. Constructor rank order
// below is load-bearing: it is the primary key of the total syntactic order.
enum class TermKind : unsigned char {
  Var,
  Abs,
  App,
  Scale,
  Sum,
  Zero,
  Ket0,
  Ket1,
  If,
  Pair,
  Meas,
  Star,
  DeltaPar,
  DeltaMeas,
  Parallel,
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  TermKind kind;
  std::string name;          // Var name; Abs binder; DeltaPar/DeltaMeas left binder
  std::string name2;         // DeltaPar/DeltaMeas right binder
  Scalar weight;             // Scale
  int arity = 0;             // Meas register width
  TypePtr ann;               // Abs annotation, may be null
  std::vector<TermPtr> kids; // children, indexed as documented in position paths
};

// Child index conventions (positions in traces use these):
//   Abs: 0 body | App: 0 fun, 1 arg | Scale: 0 body | Sum/Parallel: i-th entry
//   If: 0 cond, 1 then, 2 else | Pair: 0, 1
//   DeltaPar/DeltaMeas: 0 scrutinee, 1 left body, 2 right body

TermPtr t_var(std::string name);
TermPtr t_abs(std::string binder, TermPtr body);
TermPtr t_abs(std::string binder, TypePtr ann, TermPtr body);
TermPtr t_app(TermPtr fun, TermPtr arg);
TermPtr t_scale(Scalar s, TermPtr body);
// Requires at least two entries.
TermPtr t_sum(std::vector<TermPtr> entries);
TermPtr t_sum2(TermPtr a, TermPtr b);
TermPtr t_zero();
TermPtr t_ket(int bit);
// Right-nested ket register from a bit string like "01".
TermPtr t_ket_string(const std::string& bits);
TermPtr t_if(TermPtr cond, TermPtr then_t, TermPtr else_t);
TermPtr t_pair(TermPtr a, TermPtr b);
TermPtr t_meas(int arity);
TermPtr t_star();
TermPtr t_dpar(TermPtr scrut, std::string x, TermPtr left, std::string y, TermPtr right);
TermPtr t_dmeas(TermPtr scrut, std::string x, TermPtr left, std::string y, TermPtr right);
TermPtr t_parallel(std::vector<TermPtr> entries);

// Thunk [t] freezes t under a fresh unused binder; release {t} applies t to
// the identity. Both are ordinary terms, not new constructors.
TermPtr t_thunk(TermPtr body);
TermPtr t_release(TermPtr thunk);

// True iff the constructor is legal in the dialect (kets are shared by
// Lineal and Lambda-S; If/Pair/Meas are Lambda-S; Star/Delta/Parallel odot).
bool kind_in_dialect(TermKind k, Dialect d);

// Walks t and reports the first construct outside the dialect, empty if none.
std::string dialect_violation(const TermPtr& t, Dialect d);

std::set<std::string> free_vars(const TermPtr& t);
bool is_closed(const TermPtr& t);

// Number of free occurrences of name in t.
int count_occurrences(const TermPtr& t, const std::string& name);

// Basis terms: Var, Abs, Ket0, Ket1, and Pair of basis terms. These are the
// only arguments the base beta rule consumes.
bool is_basis_term(const TermPtr& t);

// If t is a ket register (Ket or Pair tree of kets), its bit string.
std::optional<std::string> ket_bits(const TermPtr& t);

// Structural helpers for positional rewriting.
TermPtr subterm_at(const TermPtr& t, const std::vector<int>& pos);
TermPtr replace_at(const TermPtr& t, const std::vector<int>& pos, TermPtr repl);

// Rebuilds a node with new children, keeping all payload fields.
TermPtr with_kids(const TermPtr& t, std::vector<TermPtr> kids);

}  // namespace lineal
