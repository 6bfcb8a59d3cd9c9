#ifndef MUMALL_FORMULA_HPP
#define MUMALL_FORMULA_HPP

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mumall/term.hpp"
#include "mumall/unify.hpp"

namespace mumall {

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Body of a fixed point expression: \p \x1 ... \xn. C.  Term binders share
// the nameless index space with Term::Bound (innermost binder is index 0);
// the predicate binder has its own index space counted through nested Mu/Nu
// binders (PredVar index 0 refers to the innermost enclosing body).
struct Body {
  int arity = 0;
  FormulaPtr form;
  std::string pred_hint;
  std::vector<std::string> hints;  // term binder display hints, outermost first
};
using BodyPtr = std::shared_ptr<const Body>;

// Invariant abstraction \x1 ... \xn. C supplied to the nu rule.  Same index
// conventions as Body but without a predicate binder.
struct PredAbs {
  int arity = 0;
  FormulaPtr form;
  std::vector<std::string> hints;
};
using PredAbsPtr = std::shared_ptr<const PredAbs>;

enum class Conn {
  Tensor, One, Par, Bot, With, Top, Plus, Zero,
  Eq, Neq, Forall, Exists, Mu, Nu, PredVar, Bang, Quest
};

struct Formula {
  Conn conn;
  FormulaPtr left, right;   // binary connectives; quantifier/exponential child in left
  std::string binder_hint;  // Forall/Exists
  TermPtr t1, t2;           // Eq/Neq
  BodyPtr body;             // Mu/Nu
  std::vector<TermPtr> args;  // Mu/Nu/PredVar arguments
  int pred_index = 0;       // PredVar
  std::string pred_hint;    // PredVar display
};

FormulaPtr mk_binary(Conn c, FormulaPtr l, FormulaPtr r);
FormulaPtr mk_unit(Conn c);
FormulaPtr mk_eq(TermPtr a, TermPtr b);
FormulaPtr mk_neq(TermPtr a, TermPtr b);
FormulaPtr mk_quant(Conn c, std::string hint, FormulaPtr scope);
FormulaPtr mk_fix(Conn c, BodyPtr body, std::vector<TermPtr> args);
FormulaPtr mk_predvar(int index, std::string hint, std::vector<TermPtr> args);
FormulaPtr mk_exp(Conn c, FormulaPtr f);

struct FormulaError : std::runtime_error {
  explicit FormulaError(const std::string& msg) : std::runtime_error(msg) {}
};

bool formula_eq(const FormulaPtr& a, const FormulaPtr& b);
bool body_eq(const BodyPtr& a, const BodyPtr& b);

// De Morgan dual.  An involution; the bound predicate variable of a fixed
// point body is kept as-is while everything around it is dualized.
FormulaPtr dual(const FormulaPtr& f);
BodyPtr dual(const BodyPtr& b);

enum class Polarity { Pos, Neg };
Polarity polarity(const FormulaPtr& f);

struct HierarchyClass {
  Polarity side;
  int level;  // >= 1, minimal
};
// Minimal P_n/N_n class.  PredVar occurrences take the polarity of their
// binding fixed point operator.
HierarchyClass classify(const FormulaPtr& f);
bool is_purely_positive(const FormulaPtr& f);

std::string hierarchy_to_string(const HierarchyClass& c);

// Normalize all terms inside the formula (used after substitution).
FormulaPtr normalize_terms(const FormulaPtr& f);

// Apply a first-order substitution to every term in the formula.
FormulaPtr apply_subst(const FormulaPtr& f, const Substitution& theta);
PredAbsPtr apply_subst(const PredAbsPtr& s, const Substitution& theta);

void collect_free_vars(const FormulaPtr& f, std::set<std::string>& out);
std::set<std::string> free_vars(const FormulaPtr& f);

// Replace term binder `depth` with `value` (locally closed), shifting the
// remaining indices down.
FormulaPtr open_term(const FormulaPtr& f, int depth, const TermPtr& value);

// Instantiate a quantifier scope with a witness/eigenvariable term.
FormulaPtr instantiate_scope(const FormulaPtr& quantified, const TermPtr& t);

// What a bound predicate variable is replaced by when a body is instantiated.
struct PredTarget {
  enum class Kind { MuSelf, NuSelf, Invariant } kind;
  BodyPtr self;       // MuSelf/NuSelf: the body B, occurrences become mu B / nu B
  PredAbsPtr inv;     // Invariant
  static PredTarget mu_self(BodyPtr b);
  static PredTarget nu_self(BodyPtr b);
  static PredTarget invariant(PredAbsPtr s);
};

// B with its predicate variable replaced by `target` and its term binders by
// `args`; result is term-normalized.  Throws on arity mismatch.
FormulaPtr instantiate_body(const BodyPtr& b, const PredTarget& target,
                            const std::vector<TermPtr>& args);

// mu B args -> B (mu B) args, and nu B args -> B (nu B) args.
FormulaPtr unfold_fix(const FormulaPtr& fix);

// S applied to args.
FormulaPtr apply_pred_abs(const PredAbsPtr& s, const std::vector<TermPtr>& args);

bool contains_exponential(const FormulaPtr& f);

// Replace ?P by mu(\p. bot + (p | p) + P) and !P by its dual, innermost
// first.  The result is exponential-free.
FormulaPtr expand_exponentials(const FormulaPtr& f);
BodyPtr expand_exponentials(const BodyPtr& b);
PredAbsPtr expand_exponentials(const PredAbsPtr& s);

// The body \p. bot + (p | p) + P used by the ? encoding (P a closed hole).
BodyPtr quest_body(const FormulaPtr& hole);

}  // namespace mumall

#endif
