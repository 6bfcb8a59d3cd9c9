#ifndef MUMALL_SEMANTICS_HPP
#define MUMALL_SEMANTICS_HPP

#include <string>
#include <vector>

#include "mumall/checker.hpp"
#include "mumall/uformula.hpp"

namespace mumall {

enum class Truth { True, False, Unknown };

std::string truth_to_string(Truth t);
Truth truth_not(Truth t);

// Bounded three-valued evaluation in the standard model over numerals.
// Fixed points unfold up to `fuel` (exhaustion gives Unknown); quantifiers
// enumerate numerals 0..qbound and, when the instantiated scope (or its
// dual, for forall) is purely positive, fall back to exhaustive
// computation, which can decide them exactly.  The formula must be closed;
// exponentials are expanded first.  Raising either bound never flips
// True/False, it can only resolve Unknown.
Truth eval_bounded(const FormulaPtr& f, long fuel, long qbound);

// Unpolarized formulas evaluate through an arbitrary polarization (polarity
// is semantically transparent).  Hatted quantifiers are translated first.
Truth eval_bounded(const UFormulaPtr& u, long fuel, long qbound);

struct SweepEntry {
  std::string name;
  Truth truth;
};

struct SweepReport {
  long true_count = 0;
  long unknown_count = 0;
  long false_count = 0;
  long skipped_open = 0;  // conclusions with free variables are not evaluated
  std::vector<SweepEntry> entries;
};

// Evaluates each accepted conclusion (a one-sided sequent, read as the par
// of its formulas).  Any False entry indicates a kernel bug or a bad proof.
SweepReport soundness_sweep(
    const std::vector<std::pair<std::string, Sequent>>& accepted, long fuel,
    long qbound);

}  // namespace mumall

#endif
