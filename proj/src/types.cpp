#include "lineal/types.hpp"

#include "lineal/errors.hpp"

namespace lineal {

namespace {

TypePtr make(TypeKind k, TypePtr l = nullptr, TypePtr r = nullptr) {
  auto t = std::make_shared<TypeExpr>();
  t->kind = k;
  t->left = std::move(l);
  t->right = std::move(r);
  return t;
}

}  // namespace

TypePtr ty_b() {
  static const TypePtr b = make(TypeKind::B);
  return b;
}

TypePtr ty_top() {
  static const TypePtr top = make(TypeKind::Top);
  return top;
}

TypePtr ty_prod(TypePtr a, TypePtr b) { return make(TypeKind::Prod, std::move(a), std::move(b)); }

TypePtr ty_s(TypePtr a) {
  if (a->kind == TypeKind::S) return a;  // S S A = S A
  return make(TypeKind::S, std::move(a));
}

TypePtr ty_arrow(TypePtr dom, TypePtr cod) {
  return make(TypeKind::Arrow, std::move(dom), std::move(cod));
}

TypePtr ty_odot(TypePtr a, TypePtr b) { return make(TypeKind::Odot, std::move(a), std::move(b)); }

TypePtr ty_bn(int n) {
  TypePtr t = ty_b();
  for (int i = 1; i < n; ++i) t = ty_prod(ty_b(), t);
  return t;
}

TypePtr normalize_type(const TypePtr& t) {
  switch (t->kind) {
    case TypeKind::B:
    case TypeKind::Top:
      return t;
    case TypeKind::S: {
      TypePtr inner = normalize_type(t->left);
      return ty_s(inner);
    }
    case TypeKind::Prod:
      return ty_prod(normalize_type(t->left), normalize_type(t->right));
    case TypeKind::Arrow:
      return ty_arrow(normalize_type(t->left), normalize_type(t->right));
    case TypeKind::Odot:
      return ty_odot(normalize_type(t->left), normalize_type(t->right));
  }
  return t;
}

bool type_eq(const TypePtr& a, const TypePtr& b) { return type_order(a, b) == 0; }

int type_order(const TypePtr& a, const TypePtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  switch (a->kind) {
    case TypeKind::B:
    case TypeKind::Top:
      return 0;
    case TypeKind::S:
      return type_order(a->left, b->left);
    case TypeKind::Prod:
    case TypeKind::Arrow:
    case TypeKind::Odot: {
      int c = type_order(a->left, b->left);
      if (c != 0) return c;
      return type_order(a->right, b->right);
    }
  }
  return 0;
}

bool subtype(const TypePtr& a, const TypePtr& b) {
  if (type_eq(a, b)) return true;
  if (b->kind == TypeKind::S) {
    if (a->kind == TypeKind::S) return subtype(a->left, b->left);
    return subtype(a, b->left);
  }
  if (a->kind == TypeKind::S) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TypeKind::Prod:
      return subtype(a->left, b->left) && subtype(a->right, b->right);
    case TypeKind::Arrow:
      return type_eq(a->left, b->left) && subtype(a->right, b->right);
    default:
      return false;
  }
}

TypePtr type_join(const TypePtr& a, const TypePtr& b) {
  if (subtype(a, b)) return b;
  if (subtype(b, a)) return a;
  TypePtr sa = ty_s(a);
  if (subtype(b, sa)) return sa;
  TypePtr sb = ty_s(b);
  if (subtype(a, sb)) return sb;
  throw TypeError("no join for types " + type_to_string(a) + " and " + type_to_string(b));
}

bool is_qubit_type(const TypePtr& t) {
  switch (t->kind) {
    case TypeKind::B:
      return true;
    case TypeKind::Prod:
      return is_qubit_type(t->left) && is_qubit_type(t->right);
    case TypeKind::S:
      return is_qubit_type(t->left);
    default:
      return false;
  }
}

int bn_width(const TypePtr& t) {
  if (t->kind == TypeKind::B) return 1;
  if (t->kind == TypeKind::Prod) {
    int l = bn_width(t->left);
    int r = bn_width(t->right);
    if (l > 0 && r > 0) return l + r;
  }
  return 0;
}

namespace {

// Precedence: arrow loosest, then odot, then product; S binds tightest.
void print_type(const TypePtr& t, int min_prec, std::string& out) {
  int prec;
  switch (t->kind) {
    case TypeKind::Arrow: prec = 0; break;
    case TypeKind::Odot: prec = 1; break;
    case TypeKind::Prod: prec = 2; break;
    default: prec = 3; break;
  }
  bool paren = prec < min_prec;
  if (paren) out += "(";
  switch (t->kind) {
    case TypeKind::B:
      out += "B";
      break;
    case TypeKind::Top:
      out += "Top";
      break;
    case TypeKind::S:
      out += "S ";
      print_type(t->left, 3, out);
      break;
    case TypeKind::Prod:
      // right-nested, so the left child needs the tighter slot
      print_type(t->left, 3, out);
      out += "*";
      print_type(t->right, 2, out);
      break;
    case TypeKind::Odot:
      print_type(t->left, 2, out);
      out += " @ ";
      print_type(t->right, 2, out);
      break;
    case TypeKind::Arrow:
      print_type(t->left, 1, out);
      out += " -> ";
      print_type(t->right, 0, out);
      break;
  }
  if (paren) out += ")";
}

}  // namespace

std::string type_to_string(const TypePtr& t) {
  std::string out;
  print_type(t, 0, out);
  return out;
}

}  // namespace lineal
