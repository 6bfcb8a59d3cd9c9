#include "mumall/unify.hpp"

#include <algorithm>

namespace mumall {

Signature::Signature(std::vector<std::string> names) {
  for (auto& n : names) add(n);
}

bool Signature::contains(const std::string& name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

void Signature::add(const std::string& name) {
  if (!contains(name)) names_.push_back(name);
}

std::string Signature::fresh(const std::string& hint) const {
  std::string base = hint.empty() ? "x" : hint;
  if (!contains(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!contains(cand)) return cand;
  }
}

namespace {

bool occurs(const std::string& var, const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Var: return t->name == var;
    case Term::Kind::Ctor:
    case Term::Kind::Bound: return false;
    case Term::Kind::App: return occurs(var, t->fn) || occurs(var, t->arg);
    case Term::Kind::Abs: return occurs(var, t->body);
  }
  return false;
}

// Decompose a first-order term into constructor head + arguments, or a
// bare variable.
struct Spine {
  bool is_var = false;
  std::string head;
  std::vector<TermPtr> args;
};

bool spine_of(const TermPtr& t, Spine& out) {
  TermPtr cur = t;
  out.args.clear();
  while (cur->kind == Term::Kind::App) {
    out.args.push_back(cur->arg);
    cur = cur->fn;
  }
  std::reverse(out.args.begin(), out.args.end());
  if (cur->kind == Term::Kind::Var) {
    if (!out.args.empty()) return false;  // higher-order: not supported here
    out.is_var = true;
    out.head = cur->name;
    return true;
  }
  if (cur->kind == Term::Kind::Ctor) {
    out.is_var = false;
    out.head = cur->name;
    return true;
  }
  return false;
}

}  // namespace

std::optional<Substitution> mgu(const TermPtr& t, const TermPtr& u) {
  Substitution theta;
  std::vector<std::pair<TermPtr, TermPtr>> work{{t, u}};
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    a = apply_subst(a, theta);
    b = apply_subst(b, theta);
    if (alpha_eq(a, b)) continue;
    Spine sa, sb;
    if (!spine_of(a, sa) || !spine_of(b, sb)) return std::nullopt;
    if (sa.is_var || sb.is_var) {
      // Bind the left variable when both sides are variables.
      const TermPtr& var = sa.is_var ? a : b;
      const TermPtr& val = sa.is_var ? b : a;
      if (occurs(var->name, val)) return std::nullopt;
      // theta := theta . {var |-> val}, keeping idempotence.
      Substitution step = Substitution::singleton(var->name, val);
      theta = compose(theta, step);
      continue;
    }
    if (sa.head != sb.head || sa.args.size() != sb.args.size()) return std::nullopt;
    for (std::size_t i = 0; i < sa.args.size(); ++i)
      work.emplace_back(sa.args[i], sb.args[i]);
  }
  return theta;
}

Substitution compose(const Substitution& theta, const Substitution& phi) {
  Substitution out;
  for (const auto& [x, t] : theta.bindings()) out.bind(x, apply_subst(t, phi));
  for (const auto& [y, t] : phi.bindings())
    if (!theta.binds(y)) out.bind(y, t);
  return out;
}

Signature signature_update(const Signature& sigma, const Substitution& theta) {
  Signature out;
  std::set<std::string> range_vars;
  for (const auto& name : sigma.names()) {
    if (!theta.binds(name)) {
      out.add(name);
      continue;
    }
    collect_free_vars(theta.lookup(name), range_vars);
  }
  for (const auto& v : range_vars) out.add(v);
  return out;
}

}  // namespace mumall
