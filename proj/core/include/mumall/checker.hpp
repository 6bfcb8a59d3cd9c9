#ifndef MUMALL_CHECKER_HPP
#define MUMALL_CHECKER_HPP

#include <string>
#include <vector>

#include "mumall/formula.hpp"

namespace mumall {

// One-sided sequent: eigenvariable signature plus an ordered formula list.
// Exchange is implicit; rules address formulas by 0-based index.
struct Sequent {
  Signature sig;
  std::vector<FormulaPtr> formulas;
};

std::string sequent_to_string(const Sequent& s);

struct ProofNode;
using ProofNodePtr = std::shared_ptr<const ProofNode>;

// A node of an annotated proof tree.  Which annotation fields are meaningful
// depends on the rule:
//   tensor(I, [ctx])   split = non-principal indices sent to the left child
//   one                leaf, sequent exactly [1]
//   par(I) bot(I)      unary
//   with(I)            two children
//   oplus(I, bit)      alt = 0 or 1
//   top(I)             leaf
//   eq                 leaf, sequent exactly [t=t]
//   neq(I)             leaf when the sides clash, else one child
//   exists(I, term)    witness
//   forall(I, name)    var_name = eigenvariable
//   mu(I)              unary unfold of a least fixed point
//   nu(I, (xs => S))   invariant; two children
//   munu               leaf, sequent exactly [mu B ts, nu dual(B) ts]
//   unfold(I)          unary unfold of a greatest fixed point (core+ up)
//   init               leaf, sequent exactly [B, dual(B)] (core+ up)
//   cut((B), [ctx])    cut_formula; two children (core+ / mulk+)
//   contract(I)        duplicate appended at the end (mulk up)
//   weaken(I)          principal dropped (mulk up)
// Derived macros, expanded before checking:
//   id                 leaf macro, sequent exactly [B, dual(B)], any mode
//   cnn(I,(S),(U))     contraction fused with two nu rules; three children
//   wq(I) cq(I) dq(I)  weakening/contraction/dereliction on an expanded
//                      ?-formula (a mu with the question-mark body shape)
struct ProofNode {
  std::string rule;
  int principal = -1;
  int alt = -1;
  std::vector<int> split;
  TermPtr witness;
  std::string var_name;
  PredAbsPtr invariant;
  PredAbsPtr invariant2;  // cnn's U
  FormulaPtr cut_formula;
  std::vector<ProofNodePtr> children;
};

ProofNodePtr mk_proof(std::string rule, std::vector<ProofNodePtr> children = {});

enum class Mode { Core, CorePlusAdmissible, MuLK, MuLKPlus };

struct RuleSet {
  Mode mode = Mode::Core;
  bool sigma1_invariants = false;  // valid only with MuLK / MuLKPlus
  bool expand_exponentials = false;
};

Mode mode_from_string(const std::string& s);  // core, core+, mulk, mulk+
std::string mode_to_string(Mode m);

struct CheckReport {
  bool ok = true;
  std::string path;      // slash-separated child indices from the root
  std::string rule;      // rule at the failing node
  std::string message;   // expected-vs-found description
  std::string sequent;   // conclusion at the failing node
};

// Validates the proof tree against the goal under the given rule set.
// Pure; the first failing node (preorder) is reported.
CheckReport check(const ProofNode& proof, const Sequent& goal,
                  const RuleSet& rules);

// A Core-mode proof of |- A, dual(A) (A at index 0), built by recursion on A.
// Fresh eigenvariable names avoid `sig`.  This is what the `id` macro
// expands to.
ProofNodePtr derive_init(const FormulaPtr& a, const Signature& sig);

}  // namespace mumall

#endif
