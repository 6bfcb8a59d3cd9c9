#ifndef MUMALL_UFORMULA_HPP
#define MUMALL_UFORMULA_HPP

#include "mumall/formula.hpp"

namespace mumall {

// Unpolarized (classical) formulas, plus the hatted quantifiers used as
// Peano-arithmetic source syntax before relativization through nat.
struct UFormula;
using UFormulaPtr = std::shared_ptr<const UFormula>;

enum class UConn {
  And, Tt, Or, Ff, Eq, Neq, Forall, Exists, HForall, HExists, Mu, Nu, PredVar
};

struct UBody {
  int arity = 0;
  UFormulaPtr form;
  std::string pred_hint;
  std::vector<std::string> hints;
};
using UBodyPtr = std::shared_ptr<const UBody>;

struct UFormula {
  UConn conn;
  UFormulaPtr left, right;
  std::string binder_hint;
  TermPtr t1, t2;
  UBodyPtr body;
  std::vector<TermPtr> args;
  int pred_index = 0;
  std::string pred_hint;
};

UFormulaPtr umk_binary(UConn c, UFormulaPtr l, UFormulaPtr r);
UFormulaPtr umk_unit(UConn c);
UFormulaPtr umk_eq(TermPtr a, TermPtr b);
UFormulaPtr umk_neq(TermPtr a, TermPtr b);
UFormulaPtr umk_quant(UConn c, std::string hint, UFormulaPtr scope);
UFormulaPtr umk_fix(UConn c, UBodyPtr body, std::vector<TermPtr> args);
UFormulaPtr umk_predvar(int index, std::string hint, std::vector<TermPtr> args);

bool uformula_eq(const UFormulaPtr& a, const UFormulaPtr& b);

// De Morgan dual on unpolarized formulas (negation-free, like dual()).
UFormulaPtr udual(const UFormulaPtr& u);

// Number of propositional-connective occurrences (and, or, tt, ff) in
// pre-order; the length polarize() expects for its choice vector.
int propositional_count(const UFormulaPtr& u);

// Each bit selects the polarized variant of the corresponding propositional
// connective in pre-order: 0 gives the negative one (&, par, top, bot),
// 1 the positive one (tensor, oplus, 1, 0).
FormulaPtr polarize(const UFormulaPtr& u, const std::vector<bool>& choices);

// Forgets polarities.  Rejects exponentials (expand them first).
UFormulaPtr depolarize(const FormulaPtr& f);

// Replace hatted quantifiers by their nat-relativized forms.
UFormulaPtr peano_translate(const UFormulaPtr& u);

bool contains_hatted(const UFormulaPtr& u);

}  // namespace mumall

#endif
