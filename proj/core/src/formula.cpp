#include "mumall/formula.hpp"

#include <functional>

namespace mumall {

namespace {
FormulaPtr node(Formula f) { return std::make_shared<Formula>(std::move(f)); }
}  // namespace

FormulaPtr mk_binary(Conn c, FormulaPtr l, FormulaPtr r) {
  Formula f;
  f.conn = c;
  f.left = std::move(l);
  f.right = std::move(r);
  return node(std::move(f));
}

FormulaPtr mk_unit(Conn c) {
  Formula f;
  f.conn = c;
  return node(std::move(f));
}

FormulaPtr mk_eq(TermPtr a, TermPtr b) {
  Formula f;
  f.conn = Conn::Eq;
  f.t1 = std::move(a);
  f.t2 = std::move(b);
  return node(std::move(f));
}

FormulaPtr mk_neq(TermPtr a, TermPtr b) {
  Formula f;
  f.conn = Conn::Neq;
  f.t1 = std::move(a);
  f.t2 = std::move(b);
  return node(std::move(f));
}

FormulaPtr mk_quant(Conn c, std::string hint, FormulaPtr scope) {
  Formula f;
  f.conn = c;
  f.binder_hint = std::move(hint);
  f.left = std::move(scope);
  return node(std::move(f));
}

FormulaPtr mk_fix(Conn c, BodyPtr body, std::vector<TermPtr> args) {
  if (static_cast<int>(args.size()) != body->arity)
    throw FormulaError("fixed point applied to wrong number of arguments");
  Formula f;
  f.conn = c;
  f.body = std::move(body);
  f.args = std::move(args);
  return node(std::move(f));
}

FormulaPtr mk_predvar(int index, std::string hint, std::vector<TermPtr> args) {
  Formula f;
  f.conn = Conn::PredVar;
  f.pred_index = index;
  f.pred_hint = std::move(hint);
  f.args = std::move(args);
  return node(std::move(f));
}

FormulaPtr mk_exp(Conn c, FormulaPtr f) {
  Formula g;
  g.conn = c;
  g.left = std::move(f);
  return node(std::move(g));
}

bool body_eq(const BodyPtr& a, const BodyPtr& b) {
  return a->arity == b->arity && formula_eq(a->form, b->form);
}

bool formula_eq(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (a->conn != b->conn) return false;
  switch (a->conn) {
    case Conn::One: case Conn::Bot: case Conn::Top: case Conn::Zero:
      return true;
    case Conn::Tensor: case Conn::Par: case Conn::With: case Conn::Plus:
      return formula_eq(a->left, b->left) && formula_eq(a->right, b->right);
    case Conn::Eq: case Conn::Neq:
      return alpha_eq(a->t1, b->t1) && alpha_eq(a->t2, b->t2);
    case Conn::Forall: case Conn::Exists:
    case Conn::Bang: case Conn::Quest:
      return formula_eq(a->left, b->left);
    case Conn::Mu: case Conn::Nu: {
      if (!body_eq(a->body, b->body) || a->args.size() != b->args.size()) return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!alpha_eq(a->args[i], b->args[i])) return false;
      return true;
    }
    case Conn::PredVar: {
      if (a->pred_index != b->pred_index || a->args.size() != b->args.size()) return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!alpha_eq(a->args[i], b->args[i])) return false;
      return true;
    }
  }
  return false;
}

namespace {

Conn dual_conn(Conn c) {
  switch (c) {
    case Conn::Tensor: return Conn::Par;
    case Conn::Par: return Conn::Tensor;
    case Conn::One: return Conn::Bot;
    case Conn::Bot: return Conn::One;
    case Conn::With: return Conn::Plus;
    case Conn::Plus: return Conn::With;
    case Conn::Top: return Conn::Zero;
    case Conn::Zero: return Conn::Top;
    case Conn::Eq: return Conn::Neq;
    case Conn::Neq: return Conn::Eq;
    case Conn::Forall: return Conn::Exists;
    case Conn::Exists: return Conn::Forall;
    case Conn::Mu: return Conn::Nu;
    case Conn::Nu: return Conn::Mu;
    case Conn::Bang: return Conn::Quest;
    case Conn::Quest: return Conn::Bang;
    case Conn::PredVar: return Conn::PredVar;
  }
  return c;
}

}  // namespace

FormulaPtr dual(const FormulaPtr& f) {
  switch (f->conn) {
    case Conn::One: case Conn::Bot: case Conn::Top: case Conn::Zero:
      return mk_unit(dual_conn(f->conn));
    case Conn::Tensor: case Conn::Par: case Conn::With: case Conn::Plus:
      return mk_binary(dual_conn(f->conn), dual(f->left), dual(f->right));
    case Conn::Eq: return mk_neq(f->t1, f->t2);
    case Conn::Neq: return mk_eq(f->t1, f->t2);
    case Conn::Forall: case Conn::Exists:
      return mk_quant(dual_conn(f->conn), f->binder_hint, dual(f->left));
    case Conn::Mu: case Conn::Nu:
      return mk_fix(dual_conn(f->conn), dual(f->body), f->args);
    case Conn::PredVar:
      return f;  // the bound predicate variable is kept
    case Conn::Bang: case Conn::Quest:
      return mk_exp(dual_conn(f->conn), dual(f->left));
  }
  throw FormulaError("dual: malformed formula");
}

BodyPtr dual(const BodyPtr& b) {
  auto out = std::make_shared<Body>(*b);
  out->form = dual(b->form);
  return out;
}

namespace {

std::optional<Polarity> polarity_env(const FormulaPtr& f, const std::vector<Polarity>& env) {
  switch (f->conn) {
    case Conn::Tensor: case Conn::One: case Conn::Plus: case Conn::Zero:
    case Conn::Eq: case Conn::Exists: case Conn::Mu: case Conn::Quest:
      return Polarity::Pos;
    case Conn::Par: case Conn::Bot: case Conn::With: case Conn::Top:
    case Conn::Neq: case Conn::Forall: case Conn::Nu: case Conn::Bang:
      return Polarity::Neg;
    case Conn::PredVar: {
      int i = static_cast<int>(env.size()) - 1 - f->pred_index;
      if (i < 0) return std::nullopt;
      return env[static_cast<std::size_t>(i)];
    }
  }
  return std::nullopt;
}

int level_env(const FormulaPtr& f, Polarity expected, std::vector<Polarity>& env);

// Level of `child` seen from a parent of polarity `parent_pol`.
int child_level(const FormulaPtr& child, Polarity parent_pol, std::vector<Polarity>& env) {
  auto p = polarity_env(child, env);
  if (!p) throw FormulaError("classify: unbound predicate variable");
  int lvl = level_env(child, *p, env);
  return (*p == parent_pol) ? lvl : lvl + 1;
}

int level_env(const FormulaPtr& f, Polarity pol, std::vector<Polarity>& env) {
  switch (f->conn) {
    case Conn::One: case Conn::Bot: case Conn::Top: case Conn::Zero:
    case Conn::Eq: case Conn::Neq: case Conn::PredVar:
      return 1;
    case Conn::Tensor: case Conn::Par: case Conn::With: case Conn::Plus:
      return std::max(child_level(f->left, pol, env), child_level(f->right, pol, env));
    case Conn::Forall: case Conn::Exists:
      return child_level(f->left, pol, env);
    case Conn::Mu: case Conn::Nu: {
      env.push_back(f->conn == Conn::Mu ? Polarity::Pos : Polarity::Neg);
      int lvl = child_level(f->body->form, pol, env);
      env.pop_back();
      return lvl;
    }
    case Conn::Bang: case Conn::Quest:
      return child_level(f->left, pol, env);
  }
  return 1;
}

}  // namespace

Polarity polarity(const FormulaPtr& f) {
  std::vector<Polarity> env;
  auto p = polarity_env(f, env);
  if (!p) throw FormulaError("polarity: unbound predicate variable");
  return *p;
}

HierarchyClass classify(const FormulaPtr& f) {
  FormulaPtr g = contains_exponential(f) ? expand_exponentials(f) : f;
  std::vector<Polarity> env;
  auto p = polarity_env(g, env);
  if (!p) throw FormulaError("classify: unbound predicate variable");
  return HierarchyClass{*p, level_env(g, *p, env)};
}

bool is_purely_positive(const FormulaPtr& f) {
  HierarchyClass c = classify(f);
  return c.side == Polarity::Pos && c.level == 1;
}

std::string hierarchy_to_string(const HierarchyClass& c) {
  return (c.side == Polarity::Pos ? "P" : "N") + std::to_string(c.level);
}

namespace {

FormulaPtr map_terms(const FormulaPtr& f, const std::function<TermPtr(const TermPtr&, int)>& fn,
                     int depth) {
  switch (f->conn) {
    case Conn::One: case Conn::Bot: case Conn::Top: case Conn::Zero:
      return f;
    case Conn::Tensor: case Conn::Par: case Conn::With: case Conn::Plus:
      return mk_binary(f->conn, map_terms(f->left, fn, depth), map_terms(f->right, fn, depth));
    case Conn::Eq:
      return mk_eq(fn(f->t1, depth), fn(f->t2, depth));
    case Conn::Neq:
      return mk_neq(fn(f->t1, depth), fn(f->t2, depth));
    case Conn::Forall: case Conn::Exists:
      return mk_quant(f->conn, f->binder_hint, map_terms(f->left, fn, depth + 1));
    case Conn::Mu: case Conn::Nu: {
      std::vector<TermPtr> args;
      args.reserve(f->args.size());
      for (const auto& a : f->args) args.push_back(fn(a, depth));
      // Bodies are closed at the Bound level, so named-variable maps must
      // still traverse them while index-sensitive maps need not.
      auto body = std::make_shared<Body>(*f->body);
      body->form = map_terms(f->body->form, fn, f->body->arity);
      return mk_fix(f->conn, body, std::move(args));
    }
    case Conn::PredVar: {
      std::vector<TermPtr> args;
      args.reserve(f->args.size());
      for (const auto& a : f->args) args.push_back(fn(a, depth));
      return mk_predvar(f->pred_index, f->pred_hint, std::move(args));
    }
    case Conn::Bang: case Conn::Quest:
      return mk_exp(f->conn, map_terms(f->left, fn, depth));
  }
  return f;
}

}  // namespace

FormulaPtr normalize_terms(const FormulaPtr& f) {
  return map_terms(f, [](const TermPtr& t, int) { return normalize(t); }, 0);
}

FormulaPtr apply_subst(const FormulaPtr& f, const Substitution& theta) {
  if (theta.empty()) return f;
  return map_terms(f, [&](const TermPtr& t, int) { return apply_subst(t, theta); }, 0);
}

PredAbsPtr apply_subst(const PredAbsPtr& s, const Substitution& theta) {
  auto out = std::make_shared<PredAbs>(*s);
  out->form = apply_subst(s->form, theta);
  return out;
}

void collect_free_vars(const FormulaPtr& f, std::set<std::string>& out) {
  map_terms(f, [&](const TermPtr& t, int) { collect_free_vars(t, out); return t; }, 0);
}

std::set<std::string> free_vars(const FormulaPtr& f) {
  std::set<std::string> out;
  collect_free_vars(f, out);
  return out;
}

FormulaPtr open_term(const FormulaPtr& f, int depth, const TermPtr& value) {
  switch (f->conn) {
    case Conn::One: case Conn::Bot: case Conn::Top: case Conn::Zero:
      return f;
    case Conn::Tensor: case Conn::Par: case Conn::With: case Conn::Plus:
      return mk_binary(f->conn, open_term(f->left, depth, value),
                       open_term(f->right, depth, value));
    case Conn::Eq:
      return mk_eq(open_bound(f->t1, depth, value), open_bound(f->t2, depth, value));
    case Conn::Neq:
      return mk_neq(open_bound(f->t1, depth, value), open_bound(f->t2, depth, value));
    case Conn::Forall: case Conn::Exists:
      return mk_quant(f->conn, f->binder_hint, open_term(f->left, depth + 1, value));
    case Conn::Mu: case Conn::Nu: {
      std::vector<TermPtr> args;
      args.reserve(f->args.size());
      for (const auto& a : f->args) args.push_back(open_bound(a, depth, value));
      // body form is closed at the Bound level: nothing to open inside
      return mk_fix(f->conn, f->body, std::move(args));
    }
    case Conn::PredVar: {
      std::vector<TermPtr> args;
      args.reserve(f->args.size());
      for (const auto& a : f->args) args.push_back(open_bound(a, depth, value));
      return mk_predvar(f->pred_index, f->pred_hint, std::move(args));
    }
    case Conn::Bang: case Conn::Quest:
      return mk_exp(f->conn, open_term(f->left, depth, value));
  }
  return f;
}

namespace {

// Formula-level simultaneous open; see open_bounds on terms.
FormulaPtr open_term_simul(const FormulaPtr& f, int depth,
                           const std::vector<TermPtr>& values) {
  switch (f->conn) {
    case Conn::One: case Conn::Bot: case Conn::Top: case Conn::Zero:
      return f;
    case Conn::Tensor: case Conn::Par: case Conn::With: case Conn::Plus:
      return mk_binary(f->conn, open_term_simul(f->left, depth, values),
                       open_term_simul(f->right, depth, values));
    case Conn::Eq:
      return mk_eq(open_bounds(f->t1, depth, values),
                   open_bounds(f->t2, depth, values));
    case Conn::Neq:
      return mk_neq(open_bounds(f->t1, depth, values),
                    open_bounds(f->t2, depth, values));
    case Conn::Forall: case Conn::Exists:
      return mk_quant(f->conn, f->binder_hint,
                      open_term_simul(f->left, depth + 1, values));
    case Conn::Mu: case Conn::Nu: {
      std::vector<TermPtr> args;
      args.reserve(f->args.size());
      for (const auto& a : f->args) args.push_back(open_bounds(a, depth, values));
      // body form is closed at the Bound level: nothing to open inside
      return mk_fix(f->conn, f->body, std::move(args));
    }
    case Conn::PredVar: {
      std::vector<TermPtr> args;
      args.reserve(f->args.size());
      for (const auto& a : f->args) args.push_back(open_bounds(a, depth, values));
      return mk_predvar(f->pred_index, f->pred_hint, std::move(args));
    }
    case Conn::Bang: case Conn::Quest:
      return mk_exp(f->conn, open_term_simul(f->left, depth, values));
  }
  return f;
}

// Binder arity-1-i takes args[i]; open_bounds wants the innermost first.
std::vector<TermPtr> innermost_first(const std::vector<TermPtr>& args) {
  return std::vector<TermPtr>(args.rbegin(), args.rend());
}

}  // namespace

FormulaPtr instantiate_scope(const FormulaPtr& quantified, const TermPtr& t) {
  if (quantified->conn != Conn::Forall && quantified->conn != Conn::Exists)
    throw FormulaError("instantiate_scope: not a quantified formula");
  if (has_free_bound(t))
    throw FormulaError("instantiate_scope: instantiation term is not locally closed");
  return normalize_terms(open_term(quantified->left, 0, t));
}

PredTarget PredTarget::mu_self(BodyPtr b) { return PredTarget{Kind::MuSelf, std::move(b), nullptr}; }
PredTarget PredTarget::nu_self(BodyPtr b) { return PredTarget{Kind::NuSelf, std::move(b), nullptr}; }
PredTarget PredTarget::invariant(PredAbsPtr s) { return PredTarget{Kind::Invariant, nullptr, std::move(s)}; }

namespace {

FormulaPtr subst_pred(const FormulaPtr& f, int pdepth, const PredTarget& target) {
  switch (f->conn) {
    case Conn::One: case Conn::Bot: case Conn::Top: case Conn::Zero:
    case Conn::Eq: case Conn::Neq:
      return f;
    case Conn::Tensor: case Conn::Par: case Conn::With: case Conn::Plus:
      return mk_binary(f->conn, subst_pred(f->left, pdepth, target),
                       subst_pred(f->right, pdepth, target));
    case Conn::Forall: case Conn::Exists:
      return mk_quant(f->conn, f->binder_hint, subst_pred(f->left, pdepth, target));
    case Conn::Mu: case Conn::Nu: {
      auto body = std::make_shared<Body>(*f->body);
      body->form = subst_pred(f->body->form, pdepth + 1, target);
      return mk_fix(f->conn, std::move(body), f->args);
    }
    case Conn::PredVar: {
      if (f->pred_index != pdepth) return f;
      switch (target.kind) {
        case PredTarget::Kind::MuSelf: return mk_fix(Conn::Mu, target.self, f->args);
        case PredTarget::Kind::NuSelf: return mk_fix(Conn::Nu, target.self, f->args);
        case PredTarget::Kind::Invariant: return apply_pred_abs(target.inv, f->args);
      }
      return f;
    }
    case Conn::Bang: case Conn::Quest:
      return mk_exp(f->conn, subst_pred(f->left, pdepth, target));
  }
  return f;
}

}  // namespace

FormulaPtr instantiate_body(const BodyPtr& b, const PredTarget& target,
                            const std::vector<TermPtr>& args) {
  if (static_cast<int>(args.size()) != b->arity)
    throw FormulaError("instantiate_body: arity mismatch");
  if (target.kind == PredTarget::Kind::Invariant && target.inv->arity != b->arity)
    throw FormulaError("instantiate_body: invariant arity mismatch");
  FormulaPtr f = subst_pred(b->form, 0, target);
  return normalize_terms(open_term_simul(f, 0, innermost_first(args)));
}

FormulaPtr unfold_fix(const FormulaPtr& fix) {
  if (fix->conn == Conn::Mu)
    return instantiate_body(fix->body, PredTarget::mu_self(fix->body), fix->args);
  if (fix->conn == Conn::Nu)
    return instantiate_body(fix->body, PredTarget::nu_self(fix->body), fix->args);
  throw FormulaError("unfold_fix: not a fixed point formula");
}

FormulaPtr apply_pred_abs(const PredAbsPtr& s, const std::vector<TermPtr>& args) {
  if (static_cast<int>(args.size()) != s->arity)
    throw FormulaError("apply_pred_abs: arity mismatch");
  return normalize_terms(open_term_simul(s->form, 0, innermost_first(args)));
}

bool contains_exponential(const FormulaPtr& f) {
  switch (f->conn) {
    case Conn::Bang: case Conn::Quest: return true;
    case Conn::Tensor: case Conn::Par: case Conn::With: case Conn::Plus:
      return contains_exponential(f->left) || contains_exponential(f->right);
    case Conn::Forall: case Conn::Exists:
      return contains_exponential(f->left);
    case Conn::Mu: case Conn::Nu:
      return contains_exponential(f->body->form);
    default: return false;
  }
}

namespace {

FormulaPtr shift_pred(const FormulaPtr& f, int d, int cutoff) {
  switch (f->conn) {
    case Conn::One: case Conn::Bot: case Conn::Top: case Conn::Zero:
    case Conn::Eq: case Conn::Neq:
      return f;
    case Conn::Tensor: case Conn::Par: case Conn::With: case Conn::Plus:
      return mk_binary(f->conn, shift_pred(f->left, d, cutoff), shift_pred(f->right, d, cutoff));
    case Conn::Forall: case Conn::Exists:
      return mk_quant(f->conn, f->binder_hint, shift_pred(f->left, d, cutoff));
    case Conn::Mu: case Conn::Nu: {
      auto body = std::make_shared<Body>(*f->body);
      body->form = shift_pred(f->body->form, d, cutoff + 1);
      return mk_fix(f->conn, std::move(body), f->args);
    }
    case Conn::PredVar:
      return f->pred_index >= cutoff
                 ? mk_predvar(f->pred_index + d, f->pred_hint, f->args)
                 : f;
    case Conn::Bang: case Conn::Quest:
      return mk_exp(f->conn, shift_pred(f->left, d, cutoff));
  }
  return f;
}

void collect_free_bounds(const TermPtr& t, int depth, std::set<int>& out) {
  switch (t->kind) {
    case Term::Kind::Var:
    case Term::Kind::Ctor: return;
    case Term::Kind::Bound:
      if (t->index >= depth) out.insert(t->index - depth);
      return;
    case Term::Kind::App:
      collect_free_bounds(t->fn, depth, out);
      collect_free_bounds(t->arg, depth, out);
      return;
    case Term::Kind::Abs:
      collect_free_bounds(t->body, depth + 1, out);
      return;
  }
}

void collect_free_bounds(const FormulaPtr& f, int depth, std::set<int>& out) {
  switch (f->conn) {
    case Conn::One: case Conn::Bot: case Conn::Top: case Conn::Zero:
      return;
    case Conn::Tensor: case Conn::Par: case Conn::With: case Conn::Plus:
      collect_free_bounds(f->left, depth, out);
      collect_free_bounds(f->right, depth, out);
      return;
    case Conn::Eq: case Conn::Neq:
      collect_free_bounds(f->t1, depth, out);
      collect_free_bounds(f->t2, depth, out);
      return;
    case Conn::Forall: case Conn::Exists:
      collect_free_bounds(f->left, depth + 1, out);
      return;
    case Conn::Mu: case Conn::Nu:
    case Conn::PredVar:
      for (const auto& a : f->args) collect_free_bounds(a, depth, out);
      return;  // body forms are closed at the Bound level
    case Conn::Bang: case Conn::Quest:
      collect_free_bounds(f->left, depth, out);
      return;
  }
}

TermPtr remap_bounds(const TermPtr& t, int depth, const std::map<int, int>& abs_to_binder) {
  switch (t->kind) {
    case Term::Kind::Var:
    case Term::Kind::Ctor: return t;
    case Term::Kind::Bound: {
      if (t->index < depth) return t;
      return mk_bound(abs_to_binder.at(t->index - depth) + depth);
    }
    case Term::Kind::App:
      return mk_app(remap_bounds(t->fn, depth, abs_to_binder),
                    remap_bounds(t->arg, depth, abs_to_binder));
    case Term::Kind::Abs:
      return mk_abs(t->name, remap_bounds(t->body, depth + 1, abs_to_binder));
  }
  return t;
}

FormulaPtr remap_bounds(const FormulaPtr& f, int depth, const std::map<int, int>& m) {
  switch (f->conn) {
    case Conn::One: case Conn::Bot: case Conn::Top: case Conn::Zero:
      return f;
    case Conn::Tensor: case Conn::Par: case Conn::With: case Conn::Plus:
      return mk_binary(f->conn, remap_bounds(f->left, depth, m), remap_bounds(f->right, depth, m));
    case Conn::Eq:
      return mk_eq(remap_bounds(f->t1, depth, m), remap_bounds(f->t2, depth, m));
    case Conn::Neq:
      return mk_neq(remap_bounds(f->t1, depth, m), remap_bounds(f->t2, depth, m));
    case Conn::Forall: case Conn::Exists:
      return mk_quant(f->conn, f->binder_hint, remap_bounds(f->left, depth + 1, m));
    case Conn::Mu: case Conn::Nu: {
      std::vector<TermPtr> args;
      for (const auto& a : f->args) args.push_back(remap_bounds(a, depth, m));
      return mk_fix(f->conn, f->body, std::move(args));
    }
    case Conn::PredVar: {
      std::vector<TermPtr> args;
      for (const auto& a : f->args) args.push_back(remap_bounds(a, depth, m));
      return mk_predvar(f->pred_index, f->pred_hint, std::move(args));
    }
    case Conn::Bang: case Conn::Quest:
      return mk_exp(f->conn, remap_bounds(f->left, depth, m));
  }
  return f;
}

// ?P for an open P is closed over its free bound variables: the fixed point
// gains one term binder per captured variable and is applied back to them.
FormulaPtr expand_quest(const FormulaPtr& hole) {
  std::set<int> free_abs;
  collect_free_bounds(hole, 0, free_abs);
  std::vector<int> abs(free_abs.begin(), free_abs.end());  // ascending
  int k = static_cast<int>(abs.size());
  std::map<int, int> abs_to_binder;
  for (int m = 0; m < k; ++m) abs_to_binder[abs[static_cast<std::size_t>(m)]] = m;
  FormulaPtr closed = k == 0 ? hole : remap_bounds(hole, 0, abs_to_binder);

  std::vector<TermPtr> pargs;
  for (int j = k - 1; j >= 0; --j) pargs.push_back(mk_bound(j));
  FormulaPtr p = mk_predvar(0, "p", pargs);
  auto b = std::make_shared<Body>();
  b->arity = k;
  b->form = mk_binary(Conn::Plus, mk_unit(Conn::Bot),
                      mk_binary(Conn::Plus, mk_binary(Conn::Par, p, p),
                                shift_pred(closed, 1, 0)));
  b->pred_hint = "p";
  for (int j = 0; j < k; ++j) b->hints.push_back("w" + std::to_string(j));

  std::vector<TermPtr> args;
  for (int j = k - 1; j >= 0; --j) args.push_back(mk_bound(abs[static_cast<std::size_t>(j)]));
  return mk_fix(Conn::Mu, std::move(b), std::move(args));
}

}  // namespace

BodyPtr quest_body(const FormulaPtr& hole) {
  // \p. bot + ((p | p) + P), with P's free predicate indices shifted past p.
  FormulaPtr p = mk_predvar(0, "p", {});
  FormulaPtr f = mk_binary(Conn::Plus, mk_unit(Conn::Bot),
                           mk_binary(Conn::Plus, mk_binary(Conn::Par, p, p),
                                     shift_pred(hole, 1, 0)));
  auto b = std::make_shared<Body>();
  b->arity = 0;
  b->form = f;
  b->pred_hint = "p";
  return b;
}

FormulaPtr expand_exponentials(const FormulaPtr& f) {
  switch (f->conn) {
    case Conn::One: case Conn::Bot: case Conn::Top: case Conn::Zero:
    case Conn::Eq: case Conn::Neq: case Conn::PredVar:
      return f;
    case Conn::Tensor: case Conn::Par: case Conn::With: case Conn::Plus:
      return mk_binary(f->conn, expand_exponentials(f->left), expand_exponentials(f->right));
    case Conn::Forall: case Conn::Exists:
      return mk_quant(f->conn, f->binder_hint, expand_exponentials(f->left));
    case Conn::Mu: case Conn::Nu: {
      auto body = std::make_shared<Body>(*f->body);
      body->form = expand_exponentials(f->body->form);
      return mk_fix(f->conn, std::move(body), f->args);
    }
    case Conn::Quest:
      return expand_quest(expand_exponentials(f->left));
    case Conn::Bang:
      // !P = dual(? dual(P))
      return dual(expand_quest(expand_exponentials(dual(f->left))));
  }
  return f;
}

BodyPtr expand_exponentials(const BodyPtr& b) {
  auto out = std::make_shared<Body>(*b);
  out->form = expand_exponentials(b->form);
  return out;
}

PredAbsPtr expand_exponentials(const PredAbsPtr& s) {
  auto out = std::make_shared<PredAbs>(*s);
  out->form = expand_exponentials(s->form);
  return out;
}

}  // namespace mumall
