#ifndef MUMALL_COMPUTE_HPP
#define MUMALL_COMPUTE_HPP

#include <optional>
#include <string>
#include <vector>

#include "mumall/checker.hpp"

namespace mumall {

// State of the purely-positive computation: eigenvariables, pending goals
// (each purely positive), and the value term being computed.  Success when
// both the signature and the goal list are empty.
struct ComputeState {
  Signature sig;
  std::vector<FormulaPtr> goals;
  TermPtr value;
};

bool is_success(const ComputeState& s);
std::string state_to_string(const ComputeState& s);

// Successor states for the leftmost goal.  Cases: equations unify (or the
// branch dies), tensors split left-to-right, oplus branches, mu unfolds,
// exists introduces a fresh variable.  Throws on a goal that is not purely
// positive.
std::vector<ComputeState> transitions(const ComputeState& s);

enum class StrategyKind { DfsLeftmost, IterativeDeepening, RandomizedDfs };

struct SearchStrategy {
  StrategyKind kind = StrategyKind::DfsLeftmost;
  long fuel = 1000000;  // max transitions
  unsigned seed = 0;    // RandomizedDfs
};

enum class SearchStatus { Found, Exhausted, OutOfFuel };

struct SearchResult {
  SearchStatus status = SearchStatus::Exhausted;
  TermPtr value;                    // Found only
  long transitions = 0;             // consumed
  std::vector<std::string> trace;   // "<case> <goal-index> <state-hash>" lines
};

// Runs the transition system from <{y}; P args y; y> and returns the first
// success found.  `args` must be ground and one shorter than P's arity.
SearchResult search(const BodyPtr& pred, const std::vector<TermPtr>& args,
                    const SearchStrategy& strategy, bool want_trace = false);

// All success values reachable within `fuel` transitions, deduplicated.
std::vector<TermPtr> enumerate_successes(const BodyPtr& pred,
                                         const std::vector<TermPtr>& args,
                                         long fuel);

// Replays a successful trace for `value` into a Core proof of
// |- ex y. (mu pred) args y.  Throws if no trace reaches that value in fuel.
ProofNodePtr certify(const BodyPtr& pred, const std::vector<TermPtr>& args,
                     const TermPtr& value, long fuel = 1000000);

// The goal formula ex y. (mu pred) args y certified proofs conclude.
FormulaPtr certified_goal(const BodyPtr& pred, const std::vector<TermPtr>& args);

}  // namespace mumall

#endif
