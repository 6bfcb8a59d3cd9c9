#include "mumall/term.hpp"

#include <functional>
#include <sstream>

namespace mumall {

TypePtr SimpleType::iota() {
  static TypePtr t = std::make_shared<SimpleType>(SimpleType{Kind::Iota, nullptr, nullptr});
  return t;
}

TypePtr SimpleType::o() {
  static TypePtr t = std::make_shared<SimpleType>(SimpleType{Kind::O, nullptr, nullptr});
  return t;
}

TypePtr SimpleType::arrow(TypePtr a, TypePtr b) {
  return std::make_shared<SimpleType>(SimpleType{Kind::Arrow, std::move(a), std::move(b)});
}

TypePtr SimpleType::fo_fn(int n) {
  TypePtr t = iota();
  for (int i = 0; i < n; ++i) t = arrow(iota(), t);
  return t;
}

bool type_eq(const TypePtr& a, const TypePtr& b) {
  if (a->kind != b->kind) return false;
  if (a->kind != SimpleType::Kind::Arrow) return true;
  return type_eq(a->from, b->from) && type_eq(a->to, b->to);
}

std::string type_to_string(const TypePtr& t) {
  switch (t->kind) {
    case SimpleType::Kind::Iota: return "i";
    case SimpleType::Kind::O: return "o";
    case SimpleType::Kind::Arrow: {
      std::string lhs = type_to_string(t->from);
      if (t->from->kind == SimpleType::Kind::Arrow) lhs = "(" + lhs + ")";
      return lhs + " -> " + type_to_string(t->to);
    }
  }
  return "?";
}

TermPtr mk_var(std::string name) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Var;
  t->name = std::move(name);
  return t;
}

TermPtr mk_bound(int index) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Bound;
  t->index = index;
  return t;
}

TermPtr mk_bound(int index, std::string hint) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Bound;
  t->index = index;
  t->name = std::move(hint);
  return t;
}

TermPtr mk_ctor(std::string name) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Ctor;
  t->name = std::move(name);
  return t;
}

TermPtr mk_app(TermPtr f, TermPtr a) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::App;
  t->fn = std::move(f);
  t->arg = std::move(a);
  return t;
}

TermPtr mk_abs(std::string hint, TermPtr body) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::Abs;
  t->name = std::move(hint);
  t->body = std::move(body);
  return t;
}

ConstructorTable::ConstructorTable() {
  arities_["z"] = 0;
  arities_["s"] = 1;
}

void ConstructorTable::declare(const std::string& name, int arity) {
  if (arity < 0) throw TypeError("constructor arity must be non-negative: " + name);
  auto it = arities_.find(name);
  if (it != arities_.end() && it->second != arity)
    throw TypeError("constructor redeclared with different arity: " + name);
  arities_[name] = arity;
}

bool ConstructorTable::contains(const std::string& name) const {
  return arities_.count(name) != 0;
}

int ConstructorTable::arity(const std::string& name) const {
  auto it = arities_.find(name);
  if (it == arities_.end()) throw TypeError("unknown constructor: " + name);
  return it->second;
}

Substitution Substitution::singleton(const std::string& var, TermPtr t) {
  Substitution s;
  s.bind(var, std::move(t));
  return s;
}

TermPtr Substitution::lookup(const std::string& var) const {
  auto it = map_.find(var);
  return it == map_.end() ? nullptr : it->second;
}

void Substitution::bind(const std::string& var, TermPtr t) {
  if (t->kind == Term::Kind::Var && t->name == var) return;  // never store x |-> x
  map_[var] = std::move(t);
}

bool alpha_eq(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Term::Kind::Var:
    case Term::Kind::Ctor: return a->name == b->name;
    case Term::Kind::Bound: return a->index == b->index;
    case Term::Kind::App: return alpha_eq(a->fn, b->fn) && alpha_eq(a->arg, b->arg);
    case Term::Kind::Abs: return alpha_eq(a->body, b->body);
  }
  return false;
}

namespace {

// Shift free Bound indices >= cutoff by d.
TermPtr shift(const TermPtr& t, int d, int cutoff) {
  switch (t->kind) {
    case Term::Kind::Var:
    case Term::Kind::Ctor: return t;
    case Term::Kind::Bound:
      return t->index >= cutoff ? mk_bound(t->index + d) : t;
    case Term::Kind::App: {
      TermPtr f = shift(t->fn, d, cutoff), a = shift(t->arg, d, cutoff);
      return (f == t->fn && a == t->arg) ? t : mk_app(f, a);
    }
    case Term::Kind::Abs: {
      TermPtr b = shift(t->body, d, cutoff + 1);
      return b == t->body ? t : mk_abs(t->name, b);
    }
  }
  return t;
}

bool mentions_bound(const TermPtr& t, int depth) {
  switch (t->kind) {
    case Term::Kind::Var:
    case Term::Kind::Ctor: return false;
    case Term::Kind::Bound: return t->index == depth;
    case Term::Kind::App: return mentions_bound(t->fn, depth) || mentions_bound(t->arg, depth);
    case Term::Kind::Abs: return mentions_bound(t->body, depth + 1);
  }
  return false;
}

TermPtr reduce(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Var:
    case Term::Kind::Bound:
    case Term::Kind::Ctor: return t;
    case Term::Kind::App: {
      TermPtr f = reduce(t->fn);
      TermPtr a = reduce(t->arg);
      if (f->kind == Term::Kind::Abs) return reduce(open_bound(f->body, 0, a));
      return (f == t->fn && a == t->arg) ? t : mk_app(f, a);
    }
    case Term::Kind::Abs: {
      TermPtr b = reduce(t->body);
      // eta: \x. (f x) -> f  when x not free in f
      if (b->kind == Term::Kind::App && b->arg->kind == Term::Kind::Bound &&
          b->arg->index == 0 && !mentions_bound(b->fn, 0)) {
        return shift(b->fn, -1, 1);
      }
      return b == t->body ? t : mk_abs(t->name, b);
    }
  }
  return t;
}

TypePtr infer(const TermPtr& t, const ConstructorTable& ctors,
              std::vector<TypePtr>& binders, const std::string& path) {
  switch (t->kind) {
    case Term::Kind::Var: return SimpleType::iota();
    case Term::Kind::Bound: {
      if (t->index < 0 || t->index >= static_cast<int>(binders.size()))
        throw TypeError("unbound index at " + path);
      return binders[binders.size() - 1 - t->index];
    }
    case Term::Kind::Ctor:
      return SimpleType::fo_fn(ctors.arity(t->name));
    case Term::Kind::App: {
      TypePtr tf = infer(t->fn, ctors, binders, path + ".fn");
      TypePtr ta = infer(t->arg, ctors, binders, path + ".arg");
      if (tf->kind != SimpleType::Kind::Arrow)
        throw TypeError("application of non-function at " + path + ": " + term_to_string(t));
      if (!type_eq(tf->from, ta))
        throw TypeError("argument type mismatch at " + path + ": " + term_to_string(t));
      return tf->to;
    }
    case Term::Kind::Abs: {
      binders.push_back(SimpleType::iota());
      TypePtr tb = infer(t->body, ctors, binders, path + ".body");
      binders.pop_back();
      return SimpleType::arrow(SimpleType::iota(), tb);
    }
  }
  throw TypeError("malformed term at " + path);
}

}  // namespace

TermPtr open_bound(const TermPtr& body, int depth, const TermPtr& value) {
  switch (body->kind) {
    case Term::Kind::Var:
    case Term::Kind::Ctor: return body;
    case Term::Kind::Bound:
      if (body->index == depth) return shift(value, depth, 0);
      if (body->index > depth) return mk_bound(body->index - 1);
      return body;
    case Term::Kind::App: {
      TermPtr f = open_bound(body->fn, depth, value);
      TermPtr a = open_bound(body->arg, depth, value);
      return (f == body->fn && a == body->arg) ? body : mk_app(f, a);
    }
    case Term::Kind::Abs: {
      TermPtr b = open_bound(body->body, depth + 1, value);
      return b == body->body ? body : mk_abs(body->name, b);
    }
  }
  return body;
}

TermPtr open_bounds(const TermPtr& body, int depth,
                    const std::vector<TermPtr>& values) {
  int n = static_cast<int>(values.size());
  switch (body->kind) {
    case Term::Kind::Var:
    case Term::Kind::Ctor: return body;
    case Term::Kind::Bound:
      if (body->index < depth) return body;
      if (body->index < depth + n) return shift(values[body->index - depth], depth, 0);
      return mk_bound(body->index - n);
    case Term::Kind::App: {
      TermPtr f = open_bounds(body->fn, depth, values);
      TermPtr a = open_bounds(body->arg, depth, values);
      return (f == body->fn && a == body->arg) ? body : mk_app(f, a);
    }
    case Term::Kind::Abs: {
      TermPtr b = open_bounds(body->body, depth + 1, values);
      return b == body->body ? body : mk_abs(body->name, b);
    }
  }
  return body;
}

TermPtr normalize(const TermPtr& t) { return reduce(t); }

TermPtr normalize(const TermPtr& t, const ConstructorTable& ctors) {
  infer_type(t, ctors);
  return reduce(t);
}

TypePtr infer_type(const TermPtr& t, const ConstructorTable& ctors) {
  std::vector<TypePtr> binders;
  return infer(t, ctors, binders, "<root>");
}

TermPtr apply_subst(const TermPtr& t, const Substitution& theta) {
  if (theta.empty()) return normalize(t);
  std::function<TermPtr(const TermPtr&)> go = [&](const TermPtr& u) -> TermPtr {
    switch (u->kind) {
      case Term::Kind::Var: {
        TermPtr r = theta.lookup(u->name);
        return r ? r : u;
      }
      case Term::Kind::Bound:
      case Term::Kind::Ctor: return u;
      case Term::Kind::App: {
        TermPtr f = go(u->fn), a = go(u->arg);
        return (f == u->fn && a == u->arg) ? u : mk_app(f, a);
      }
      case Term::Kind::Abs: {
        // Substitution ranges are closed at the Bound level, so no shifting
        // and no capture is possible.
        TermPtr b = go(u->body);
        return b == u->body ? u : mk_abs(u->name, b);
      }
    }
    return u;
  };
  return normalize(go(t));
}

TermPtr numeral(long n) {
  TermPtr t = mk_ctor("z");
  for (long i = 0; i < n; ++i) t = mk_app(mk_ctor("s"), t);
  return t;
}

std::optional<long> term_to_numeral(const TermPtr& t) {
  long n = 0;
  TermPtr cur = t;
  while (true) {
    if (cur->kind == Term::Kind::Ctor && cur->name == "z") return n;
    if (cur->kind == Term::Kind::App && cur->fn->kind == Term::Kind::Ctor &&
        cur->fn->name == "s") {
      ++n;
      cur = cur->arg;
      continue;
    }
    return std::nullopt;
  }
}

void collect_free_vars(const TermPtr& t, std::set<std::string>& out) {
  switch (t->kind) {
    case Term::Kind::Var: out.insert(t->name); return;
    case Term::Kind::Bound:
    case Term::Kind::Ctor: return;
    case Term::Kind::App:
      collect_free_vars(t->fn, out);
      collect_free_vars(t->arg, out);
      return;
    case Term::Kind::Abs: collect_free_vars(t->body, out); return;
  }
}

std::set<std::string> free_vars(const TermPtr& t) {
  std::set<std::string> out;
  collect_free_vars(t, out);
  return out;
}

bool has_free_bound(const TermPtr& t) {
  std::function<bool(const TermPtr&, int)> go = [&](const TermPtr& u, int depth) {
    switch (u->kind) {
      case Term::Kind::Var:
      case Term::Kind::Ctor: return false;
      case Term::Kind::Bound: return u->index >= depth;
      case Term::Kind::App: return go(u->fn, depth) || go(u->arg, depth);
      case Term::Kind::Abs: return go(u->body, depth + 1);
    }
    return false;
  };
  return go(t, 0);
}

namespace {

void print_term(const TermPtr& t, std::ostringstream& os, bool parens,
                std::vector<std::string>& binders) {
  switch (t->kind) {
    case Term::Kind::Var:
    case Term::Kind::Ctor: os << t->name; return;
    case Term::Kind::Bound: {
      int i = static_cast<int>(binders.size()) - 1 - t->index;
      if (i >= 0)
        os << binders[i];
      else
        os << "#" << t->index;
      return;
    }
    case Term::Kind::App: {
      if (parens) os << "(";
      print_term(t->fn, os, false, binders);
      os << " ";
      print_term(t->arg, os, true, binders);
      if (parens) os << ")";
      return;
    }
    case Term::Kind::Abs: {
      if (parens) os << "(";
      std::string hint = t->name.empty() ? "x" : t->name;
      binders.push_back(hint);
      os << "\\" << hint << ". ";
      print_term(t->body, os, false, binders);
      binders.pop_back();
      if (parens) os << ")";
      return;
    }
  }
}

}  // namespace

std::string term_to_string(const TermPtr& t) {
  std::ostringstream os;
  std::vector<std::string> binders;
  print_term(t, os, false, binders);
  return os.str();
}

}  // namespace mumall
