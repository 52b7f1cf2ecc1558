#pragma once

#include <memory>
#include <string>

namespace lineal {

// Qubit/type layer shared by the Lambda-S and odot dialects.
//   B            basis qubit type
//   Prod(A, B)   product, right-nested for registers (B^3 = B * (B * B))
//   S(A)         superposition layer; S is idempotent and kept collapsed
//   Arrow(A, B)  functions; Lambda-S restricts domains to qubit types
//   Top          the odot scalar type
//   Odot(A, B)   the odot pairing connective
enum class TypeKind : unsigned char { B, Prod, S, Arrow, Top, Odot };

struct TypeExpr;
using TypePtr = std::shared_ptr<const TypeExpr>;

struct TypeExpr {
  TypeKind kind;
  TypePtr left;   // Prod/Arrow/Odot left, S child
  TypePtr right;  // Prod/Arrow/Odot right
};

TypePtr ty_b();
TypePtr ty_top();
TypePtr ty_prod(TypePtr a, TypePtr b);
// Collapses S(S(A)) to S(A) on construction.
TypePtr ty_s(TypePtr a);
TypePtr ty_arrow(TypePtr dom, TypePtr cod);
TypePtr ty_odot(TypePtr a, TypePtr b);

// Right-nested register type B^n (n >= 1).
TypePtr ty_bn(int n);

// Recursively collapses every S(S(A)); idempotent.
TypePtr normalize_type(const TypePtr& t);

bool type_eq(const TypePtr& a, const TypePtr& b);
int type_order(const TypePtr& a, const TypePtr& b);

// Reflexive-transitive subtyping generated by A <= S(A), congruent in Prod,
// S, and Arrow codomains (domains compare by equality). Inputs S-normal.
bool subtype(const TypePtr& a, const TypePtr& b);

// Least upper bound used to join conditional branches and sum components.
// Throws TypeError if the two types have no join in the fragment.
TypePtr type_join(const TypePtr& a, const TypePtr& b);

// True for types built from B, Prod and S only (the Psi grammar).
bool is_qubit_type(const TypePtr& t);

// If t is B^n for some n, returns n; otherwise 0.
int bn_width(const TypePtr& t);

std::string type_to_string(const TypePtr& t);

}  // namespace lineal
