#ifndef MUMALL_TERM_HPP
#define MUMALL_TERM_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace mumall {

// Simple types over the two primitive types: iota (individuals) and o
// (formulas).  Arrow chains always terminate in a primitive type.
struct SimpleType;
using TypePtr = std::shared_ptr<const SimpleType>;

struct SimpleType {
  enum class Kind { Iota, O, Arrow };
  Kind kind;
  TypePtr from, to;  // Arrow only

  static TypePtr iota();
  static TypePtr o();
  static TypePtr arrow(TypePtr a, TypePtr b);
  // iota -> ... -> iota with n arguments.
  static TypePtr fo_fn(int n);
};

bool type_eq(const TypePtr& a, const TypePtr& b);
std::string type_to_string(const TypePtr& t);

struct TypeError : std::runtime_error {
  explicit TypeError(const std::string& msg) : std::runtime_error(msg) {}
};

// Simply-typed lambda-terms.  Bound variables are nameless indices; the
// binder name on Abs is a display hint only.  Free variables (eigenvariables
// and unification variables) are named and always have type iota.
struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind { Var, Bound, Ctor, App, Abs };
  Kind kind;
  std::string name;  // Var and Ctor name; Abs binder hint
  int index = 0;     // Bound
  TermPtr fn, arg;   // App
  TermPtr body;      // Abs
};

TermPtr mk_var(std::string name);
TermPtr mk_bound(int index);
TermPtr mk_bound(int index, std::string hint);
TermPtr mk_ctor(std::string name);
TermPtr mk_app(TermPtr f, TermPtr a);
TermPtr mk_abs(std::string hint, TermPtr body);

// Constructor signatures.  z : iota and s : iota -> iota are always present;
// user constructors must have first-order types iota -> ... -> iota.
class ConstructorTable {
 public:
  ConstructorTable();
  void declare(const std::string& name, int arity);
  bool contains(const std::string& name) const;
  int arity(const std::string& name) const;
  const std::map<std::string, int>& all() const { return arities_; }

 private:
  std::map<std::string, int> arities_;
};

// Idempotent first-order substitution on named variables of type iota.
class Substitution {
 public:
  Substitution() = default;
  static Substitution singleton(const std::string& var, TermPtr t);

  bool empty() const { return map_.empty(); }
  bool binds(const std::string& var) const { return map_.count(var) != 0; }
  TermPtr lookup(const std::string& var) const;
  void bind(const std::string& var, TermPtr t);
  const std::map<std::string, TermPtr>& bindings() const { return map_; }

 private:
  std::map<std::string, TermPtr> map_;
};

// Structural equality on the nameless representation; binder hints are
// ignored, so this is alpha-equivalence.
bool alpha_eq(const TermPtr& a, const TermPtr& b);

// Beta-normal, eta-reduced canonical form.  Idempotent.
TermPtr normalize(const TermPtr& t);
// Same, but typechecks first and throws TypeError (with the path of the
// offending subterm) on ill-typed input.
TermPtr normalize(const TermPtr& t, const ConstructorTable& ctors);

// Infers the simple type of a closed-at-Bound-level term.
TypePtr infer_type(const TermPtr& t, const ConstructorTable& ctors);

// Capture-avoiding, simultaneous; result is normalized.
TermPtr apply_subst(const TermPtr& t, const Substitution& theta);

// Replace Bound(depth) by `value` (which must have no free Bound indices)
// and shift the remaining indices down past the removed binder.
TermPtr open_bound(const TermPtr& body, int depth, const TermPtr& value);

// Simultaneously replace Bound(depth + k) by values[k] for k in [0, n) —
// values[0] closes the innermost of the n binders — and shift higher free
// indices down by n.  Unlike repeated open_bound, the values may themselves
// contain free Bound indices (they are shifted past local binders).
TermPtr open_bounds(const TermPtr& body, int depth,
                    const std::vector<TermPtr>& values);

TermPtr numeral(long n);
std::optional<long> term_to_numeral(const TermPtr& t);

void collect_free_vars(const TermPtr& t, std::set<std::string>& out);
std::set<std::string> free_vars(const TermPtr& t);
bool has_free_bound(const TermPtr& t);

std::string term_to_string(const TermPtr& t);

}  // namespace mumall

#endif
