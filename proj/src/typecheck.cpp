#include "lineal/typecheck.hpp"

#include "lineal/printer.hpp"

namespace lineal {

namespace {

TypePtr lookup(const TypingContext& ctx, const std::string& name) {
  auto it = ctx.find(name);
  if (it == ctx.end()) throw TypeError("unbound variable " + name);
  return it->second;
}

// Join that lets the zero vector sit in any S-type: a null side adopts the
// other operand (S-wrapped).
TypePtr join_skipping_zero(const TypePtr& acc, const TypePtr& next) {
  if (!acc) return next;
  if (!next) return acc;
  return type_join(acc, next);
}

}  // namespace

TypePtr typecheck(const TypingContext& ctx, const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var:
      return lookup(ctx, t->name);
    case TermKind::Ket0:
    case TermKind::Ket1:
      return ty_b();
    case TermKind::Zero:
      return ty_s(ty_b());
    case TermKind::Abs: {
      if (!t->ann) throw TypeError("lambda binder " + t->name + " needs a type");
      TypePtr dom = normalize_type(t->ann);
      if (!is_qubit_type(dom))
        throw TypeError("lambda domain " + type_to_string(dom) + " is not a qubit type");
      if (dom->kind == TypeKind::S && count_occurrences(t->kids[0], t->name) > 1)
        throw TypeError("superposed binder " + t->name + " used more than once");
      TypingContext inner = ctx;
      inner[t->name] = dom;
      return ty_arrow(dom, typecheck(inner, t->kids[0]));
    }
    case TermKind::App: {
      TypePtr ft = typecheck(ctx, t->kids[0]);
      TypePtr arrow = ft;
      bool lifted = false;
      if (ft->kind == TypeKind::S && ft->left->kind == TypeKind::Arrow) {
        arrow = ft->left;
        lifted = true;
      }
      if (arrow->kind != TypeKind::Arrow)
        throw TypeError("applied term of type " + type_to_string(ft));
      const TypePtr& dom = arrow->left;
      const TypePtr& cod = arrow->right;
      if (t->kids[1]->kind == TermKind::Zero) return ty_s(cod);
      TypePtr at = typecheck(ctx, t->kids[1]);
      if (subtype(at, dom)) return lifted ? ty_s(cod) : cod;
      if (subtype(at, ty_s(dom))) return ty_s(cod);
      throw TypeError("argument type " + type_to_string(at) + " does not fit domain " +
                      type_to_string(dom));
    }
    case TermKind::Scale:
      if (t->kids[0]->kind == TermKind::Zero) return ty_s(ty_b());
      return ty_s(typecheck(ctx, t->kids[0]));
    case TermKind::Sum: {
      TypePtr acc;
      for (const auto& k : t->kids) {
        if (k->kind == TermKind::Zero) continue;
        acc = join_skipping_zero(acc, typecheck(ctx, k));
      }
      if (!acc) return ty_s(ty_b());
      return ty_s(acc);
    }
    case TermKind::If: {
      TypePtr ct = typecheck(ctx, t->kids[0]);
      if (!subtype(ct, ty_s(ty_b())))
        throw TypeError("if condition has type " + type_to_string(ct) +
                        ", expected at most S B");
      TypePtr tt = t->kids[1]->kind == TermKind::Zero ? nullptr : typecheck(ctx, t->kids[1]);
      TypePtr et = t->kids[2]->kind == TermKind::Zero ? nullptr : typecheck(ctx, t->kids[2]);
      TypePtr joined = join_skipping_zero(tt, et);
      if (!joined) joined = ty_s(ty_b());
      else if (!tt || !et) joined = ty_s(joined);
      bool superposed = !subtype(ct, ty_b());
      return superposed ? ty_s(joined) : joined;
    }
    case TermKind::Pair:
      return ty_prod(typecheck(ctx, t->kids[0]), typecheck(ctx, t->kids[1]));
    case TermKind::Meas:
      return ty_arrow(ty_s(ty_bn(t->arity)), ty_bn(t->arity));
    default:
      throw TypeError("construct " + pretty(t) + " is outside the measurement dialect");
  }
}

TypePtr odot_typecheck(const TypingContext& ctx, const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var:
      return lookup(ctx, t->name);
    case TermKind::Star:
      return ty_top();
    case TermKind::Zero:
      return ty_top();
    case TermKind::Scale:
      return odot_typecheck(ctx, t->kids[0]);
    case TermKind::Sum: {
      TypePtr acc = odot_typecheck(ctx, t->kids[0]);
      for (std::size_t i = 1; i < t->kids.size(); ++i)
        acc = ty_odot(acc, odot_typecheck(ctx, t->kids[i]));
      return acc;
    }
    case TermKind::Abs: {
      if (!t->ann) throw TypeError("lambda binder " + t->name + " needs a type");
      TypePtr dom = normalize_type(t->ann);
      TypingContext inner = ctx;
      inner[t->name] = dom;
      return ty_arrow(dom, odot_typecheck(inner, t->kids[0]));
    }
    case TermKind::App: {
      TypePtr ft = odot_typecheck(ctx, t->kids[0]);
      if (ft->kind != TypeKind::Arrow)
        throw TypeError("applied term of type " + type_to_string(ft));
      TypePtr at = odot_typecheck(ctx, t->kids[1]);
      if (!type_eq(at, ft->left))
        throw TypeError("argument type " + type_to_string(at) + " does not match domain " +
                        type_to_string(ft->left));
      return ft->right;
    }
    case TermKind::DeltaPar:
    case TermKind::DeltaMeas: {
      TypePtr st = odot_typecheck(ctx, t->kids[0]);
      if (st->kind != TypeKind::Odot)
        throw TypeError("eliminated term has type " + type_to_string(st) +
                        ", expected a pairing");
      TypingContext left = ctx;
      left[t->name] = st->left;
      TypePtr lt = odot_typecheck(left, t->kids[1]);
      TypingContext right = ctx;
      right[t->name2] = st->right;
      TypePtr rt = odot_typecheck(right, t->kids[2]);
      if (!type_eq(lt, rt))
        throw TypeError("eliminator branches disagree: " + type_to_string(lt) + " vs " +
                        type_to_string(rt));
      return lt;
    }
    case TermKind::Parallel: {
      TypePtr acc = odot_typecheck(ctx, t->kids[0]);
      for (std::size_t i = 1; i < t->kids.size(); ++i) {
        TypePtr next = odot_typecheck(ctx, t->kids[i]);
        if (!type_eq(acc, next))
          throw TypeError("parallel alternatives disagree: " + type_to_string(acc) + " vs " +
                          type_to_string(next));
      }
      return acc;
    }
    default:
      throw TypeError("construct " + pretty(t) + " is outside the pairing dialect");
  }
}

}  // namespace lineal
