#include "mumall/uformula.hpp"

namespace mumall {

namespace {
UFormula* raw(UConn c) {
  auto* u = new UFormula();
  u->conn = c;
  return u;
}
}  // namespace

UFormulaPtr umk_binary(UConn c, UFormulaPtr l, UFormulaPtr r) {
  auto* u = raw(c);
  u->left = std::move(l);
  u->right = std::move(r);
  return UFormulaPtr(u);
}

UFormulaPtr umk_unit(UConn c) { return UFormulaPtr(raw(c)); }

UFormulaPtr umk_eq(TermPtr a, TermPtr b) {
  auto* u = raw(UConn::Eq);
  u->t1 = std::move(a);
  u->t2 = std::move(b);
  return UFormulaPtr(u);
}

UFormulaPtr umk_neq(TermPtr a, TermPtr b) {
  auto* u = raw(UConn::Neq);
  u->t1 = std::move(a);
  u->t2 = std::move(b);
  return UFormulaPtr(u);
}

UFormulaPtr umk_quant(UConn c, std::string hint, UFormulaPtr scope) {
  auto* u = raw(c);
  u->binder_hint = std::move(hint);
  u->left = std::move(scope);
  return UFormulaPtr(u);
}

UFormulaPtr umk_fix(UConn c, UBodyPtr body, std::vector<TermPtr> args) {
  if ((int)args.size() != body->arity)
    throw FormulaError("fixed point arity mismatch");
  auto* u = raw(c);
  u->body = std::move(body);
  u->args = std::move(args);
  return UFormulaPtr(u);
}

UFormulaPtr umk_predvar(int index, std::string hint, std::vector<TermPtr> args) {
  auto* u = raw(UConn::PredVar);
  u->pred_index = index;
  u->pred_hint = std::move(hint);
  u->args = std::move(args);
  return UFormulaPtr(u);
}

bool uformula_eq(const UFormulaPtr& a, const UFormulaPtr& b) {
  if (a == b) return true;
  if (a->conn != b->conn) return false;
  switch (a->conn) {
    case UConn::And: case UConn::Or:
      return uformula_eq(a->left, b->left) && uformula_eq(a->right, b->right);
    case UConn::Tt: case UConn::Ff:
      return true;
    case UConn::Eq: case UConn::Neq:
      return alpha_eq(a->t1, b->t1) && alpha_eq(a->t2, b->t2);
    case UConn::Forall: case UConn::Exists:
    case UConn::HForall: case UConn::HExists:
      return uformula_eq(a->left, b->left);
    case UConn::Mu: case UConn::Nu: {
      if (a->body->arity != b->body->arity) return false;
      if (!uformula_eq(a->body->form, b->body->form)) return false;
      if (a->args.size() != b->args.size()) return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!alpha_eq(a->args[i], b->args[i])) return false;
      return true;
    }
    case UConn::PredVar: {
      if (a->pred_index != b->pred_index) return false;
      if (a->args.size() != b->args.size()) return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!alpha_eq(a->args[i], b->args[i])) return false;
      return true;
    }
  }
  return false;
}

UFormulaPtr udual(const UFormulaPtr& u) {
  switch (u->conn) {
    case UConn::And: return umk_binary(UConn::Or, udual(u->left), udual(u->right));
    case UConn::Or: return umk_binary(UConn::And, udual(u->left), udual(u->right));
    case UConn::Tt: return umk_unit(UConn::Ff);
    case UConn::Ff: return umk_unit(UConn::Tt);
    case UConn::Eq: return umk_neq(u->t1, u->t2);
    case UConn::Neq: return umk_eq(u->t1, u->t2);
    case UConn::Forall: return umk_quant(UConn::Exists, u->binder_hint, udual(u->left));
    case UConn::Exists: return umk_quant(UConn::Forall, u->binder_hint, udual(u->left));
    case UConn::HForall: return umk_quant(UConn::HExists, u->binder_hint, udual(u->left));
    case UConn::HExists: return umk_quant(UConn::HForall, u->binder_hint, udual(u->left));
    case UConn::Mu: case UConn::Nu: {
      auto* nb = new UBody(*u->body);
      nb->form = udual(u->body->form);
      return umk_fix(u->conn == UConn::Mu ? UConn::Nu : UConn::Mu,
                     UBodyPtr(nb), u->args);
    }
    case UConn::PredVar:
      return u;  // the bound variable is kept as-is
  }
  throw FormulaError("udual: bad connective");
}

int propositional_count(const UFormulaPtr& u) {
  switch (u->conn) {
    case UConn::And: case UConn::Or:
      return 1 + propositional_count(u->left) + propositional_count(u->right);
    case UConn::Tt: case UConn::Ff:
      return 1;
    case UConn::Eq: case UConn::Neq: case UConn::PredVar:
      return 0;
    case UConn::Forall: case UConn::Exists:
    case UConn::HForall: case UConn::HExists:
      return propositional_count(u->left);
    case UConn::Mu: case UConn::Nu:
      return propositional_count(u->body->form);
  }
  return 0;
}

namespace {

FormulaPtr polarize_rec(const UFormulaPtr& u, const std::vector<bool>& choices,
                        std::size_t& pos) {
  auto take = [&]() -> bool {
    if (pos >= choices.size())
      throw FormulaError("polarize: choice vector too short");
    return choices[pos++];
  };
  switch (u->conn) {
    case UConn::And: {
      bool positive = take();
      auto l = polarize_rec(u->left, choices, pos);
      auto r = polarize_rec(u->right, choices, pos);
      return mk_binary(positive ? Conn::Tensor : Conn::With, l, r);
    }
    case UConn::Or: {
      bool positive = take();
      auto l = polarize_rec(u->left, choices, pos);
      auto r = polarize_rec(u->right, choices, pos);
      return mk_binary(positive ? Conn::Plus : Conn::Par, l, r);
    }
    case UConn::Tt: return mk_unit(take() ? Conn::One : Conn::Top);
    case UConn::Ff: return mk_unit(take() ? Conn::Zero : Conn::Bot);
    case UConn::Eq: return mk_eq(u->t1, u->t2);
    case UConn::Neq: return mk_neq(u->t1, u->t2);
    case UConn::Forall:
      return mk_quant(Conn::Forall, u->binder_hint, polarize_rec(u->left, choices, pos));
    case UConn::Exists:
      return mk_quant(Conn::Exists, u->binder_hint, polarize_rec(u->left, choices, pos));
    case UConn::HForall: case UConn::HExists:
      throw FormulaError("polarize: hatted quantifier, translate first");
    case UConn::Mu: case UConn::Nu: {
      auto* nb = new Body();
      nb->arity = u->body->arity;
      nb->pred_hint = u->body->pred_hint;
      nb->hints = u->body->hints;
      nb->form = polarize_rec(u->body->form, choices, pos);
      return mk_fix(u->conn == UConn::Mu ? Conn::Mu : Conn::Nu,
                    BodyPtr(nb), u->args);
    }
    case UConn::PredVar:
      return mk_predvar(u->pred_index, u->pred_hint, u->args);
  }
  throw FormulaError("polarize: bad connective");
}

}  // namespace

FormulaPtr polarize(const UFormulaPtr& u, const std::vector<bool>& choices) {
  std::size_t pos = 0;
  auto out = polarize_rec(u, choices, pos);
  if (pos != choices.size())
    throw FormulaError("polarize: choice vector too long");
  return out;
}

UFormulaPtr depolarize(const FormulaPtr& f) {
  switch (f->conn) {
    case Conn::Tensor: case Conn::With:
      return umk_binary(UConn::And, depolarize(f->left), depolarize(f->right));
    case Conn::Par: case Conn::Plus:
      return umk_binary(UConn::Or, depolarize(f->left), depolarize(f->right));
    case Conn::One: case Conn::Top: return umk_unit(UConn::Tt);
    case Conn::Bot: case Conn::Zero: return umk_unit(UConn::Ff);
    case Conn::Eq: return umk_eq(f->t1, f->t2);
    case Conn::Neq: return umk_neq(f->t1, f->t2);
    case Conn::Forall:
      return umk_quant(UConn::Forall, f->binder_hint, depolarize(f->left));
    case Conn::Exists:
      return umk_quant(UConn::Exists, f->binder_hint, depolarize(f->left));
    case Conn::Mu: case Conn::Nu: {
      auto* nb = new UBody();
      nb->arity = f->body->arity;
      nb->pred_hint = f->body->pred_hint;
      nb->hints = f->body->hints;
      nb->form = depolarize(f->body->form);
      return umk_fix(f->conn == Conn::Mu ? UConn::Mu : UConn::Nu,
                     UBodyPtr(nb), f->args);
    }
    case Conn::PredVar:
      return umk_predvar(f->pred_index, f->pred_hint, f->args);
    case Conn::Bang: case Conn::Quest:
      throw FormulaError("depolarize: exponential, expand first");
  }
  throw FormulaError("depolarize: bad connective");
}

namespace {

// nat as an unpolarized predicate, applied to a term.
UFormulaPtr unat(const TermPtr& t) {
  auto base = umk_eq(mk_bound(0, "x"), mk_ctor("z"));
  // Under the exists binder the outer x shifts to index 1.
  auto step = umk_quant(
      UConn::Exists, "x'",
      umk_binary(UConn::And,
                 umk_eq(mk_bound(1, "x"), mk_app(mk_ctor("s"), mk_bound(0, "x'"))),
                 umk_predvar(0, "nat", {mk_bound(0, "x'")})));
  auto* b = new UBody();
  b->arity = 1;
  b->pred_hint = "nat";
  b->hints = {"x"};
  b->form = umk_binary(UConn::Or, base, step);
  return umk_fix(UConn::Mu, UBodyPtr(b), {t});
}

}  // namespace

UFormulaPtr peano_translate(const UFormulaPtr& u) {
  switch (u->conn) {
    case UConn::And: case UConn::Or:
      return umk_binary(u->conn, peano_translate(u->left), peano_translate(u->right));
    case UConn::Tt: case UConn::Ff: case UConn::Eq: case UConn::Neq:
    case UConn::PredVar:
      return u;
    case UConn::Forall: case UConn::Exists:
      return umk_quant(u->conn, u->binder_hint, peano_translate(u->left));
    case UConn::HForall: {
      auto guard = udual(unat(mk_bound(0, u->binder_hint)));
      return umk_quant(UConn::Forall, u->binder_hint,
                       umk_binary(UConn::Or, guard, peano_translate(u->left)));
    }
    case UConn::HExists: {
      auto guard = unat(mk_bound(0, u->binder_hint));
      return umk_quant(UConn::Exists, u->binder_hint,
                       umk_binary(UConn::And, guard, peano_translate(u->left)));
    }
    case UConn::Mu: case UConn::Nu: {
      auto* nb = new UBody(*u->body);
      nb->form = peano_translate(u->body->form);
      return umk_fix(u->conn, UBodyPtr(nb), u->args);
    }
  }
  throw FormulaError("peano_translate: bad connective");
}

bool contains_hatted(const UFormulaPtr& u) {
  switch (u->conn) {
    case UConn::HForall: case UConn::HExists: return true;
    case UConn::And: case UConn::Or:
      return contains_hatted(u->left) || contains_hatted(u->right);
    case UConn::Forall: case UConn::Exists:
      return contains_hatted(u->left);
    case UConn::Mu: case UConn::Nu:
      return contains_hatted(u->body->form);
    default: return false;
  }
}

}  // namespace mumall
