#ifndef MUMALL_STDLIB_HPP
#define MUMALL_STDLIB_HPP

#include "mumall/syntax.hpp"

namespace mumall {

// Shared definitions (nat, plus, mult, ack, singleton, and their unpolarized
// twins), parsed once from embedded source.
const SourceFile& standard_definitions();

// Body of a standard fixed point predicate; throws on unknown name.
BodyPtr std_body(const std::string& name);

struct NamedBody {
  std::string name;
  Conn conn;
  BodyPtr body;
};

// The definition table: standard predicates plus "quest-body", the generic
// ?-encoding body \p. bot + (p | p) + P with P left open.
std::vector<NamedBody> definitions();

enum class StructRule { W, C, D };

// Structural rule instance over an expanded ?-formula at `principal`:
// weakening, contraction, and dereliction each reduce to a short chain of
// core rules around the given premise proof.
//   W: premise |- Gamma            conclusion |- ?B, Gamma
//   C: premise |- ?B, ?B, Gamma    conclusion |- ?B, Gamma
//   D: premise |- B, Gamma         conclusion |- ?B, Gamma
// The ?B copies and B appear at `principal` (C puts them at principal and
// principal+1).
ProofNodePtr derived_structural(StructRule rule, int principal,
                                ProofNodePtr premise);

struct PeanoAxiom {
  std::string name;
  UFormulaPtr axiom;
};

// The six Peano axioms in relational, hatted-quantifier form, plus the
// induction scheme shape instantiated with A := nat.
std::vector<PeanoAxiom> peano_axioms();

}  // namespace mumall

#endif
