#include "mumall/semantics.hpp"

#include "mumall/compute.hpp"

namespace mumall {

std::string truth_to_string(Truth t) {
  switch (t) {
    case Truth::True: return "True";
    case Truth::False: return "False";
    case Truth::Unknown: return "Unknown";
  }
  return "?";
}

Truth truth_not(Truth t) {
  switch (t) {
    case Truth::True: return Truth::False;
    case Truth::False: return Truth::True;
    case Truth::Unknown: return Truth::Unknown;
  }
  return Truth::Unknown;
}

namespace {

Truth and3(Truth a, Truth b) {
  if (a == Truth::False || b == Truth::False) return Truth::False;
  if (a == Truth::True && b == Truth::True) return Truth::True;
  return Truth::Unknown;
}

Truth or3(Truth a, Truth b) {
  if (a == Truth::True || b == Truth::True) return Truth::True;
  if (a == Truth::False && b == Truth::False) return Truth::False;
  return Truth::Unknown;
}

// The quantifier scope as a unary predicate body; the quantified variable
// becomes the body's term binder.
BodyPtr scope_as_body(const FormulaPtr& quantified) {
  auto b = std::make_shared<Body>();
  b->arity = 1;
  b->form = quantified->left;
  b->pred_hint = "q";
  b->hints = {quantified->binder_hint.empty() ? "x" : quantified->binder_hint};
  return b;
}

bool body_is_p1(const BodyPtr& b) {
  try {
    HierarchyClass c = classify(mk_fix(Conn::Mu, b, {numeral(0)}));
    return c.side == Polarity::Pos && c.level == 1;
  } catch (const FormulaError&) {
    return false;
  }
}

// Exhaustively decides "some t satisfies scope(t)" when the scope is purely
// positive.  Search fuel scales with the evaluation fuel.
Truth decide_exists_by_compute(const FormulaPtr& exists_f, long fuel) {
  BodyPtr b = scope_as_body(exists_f);
  if (!body_is_p1(b)) return Truth::Unknown;
  SearchStrategy strat;
  strat.kind = StrategyKind::DfsLeftmost;
  strat.fuel = std::max<long>(10000, fuel * 200);
  try {
    SearchResult r = search(b, {}, strat);
    if (r.status == SearchStatus::Found) return Truth::True;
    if (r.status == SearchStatus::Exhausted) return Truth::False;
  } catch (const FormulaError&) {
  }
  return Truth::Unknown;
}

Truth eval_rec(const FormulaPtr& f, long fuel, long qbound) {
  switch (f->conn) {
    case Conn::One: case Conn::Top: return Truth::True;
    case Conn::Bot: case Conn::Zero: return Truth::False;
    case Conn::Tensor: case Conn::With: {
      Truth a = eval_rec(f->left, fuel, qbound);
      if (a == Truth::False) return Truth::False;  // short-circuit
      // equal branches (the ?-encoding unfolds to q | q) need one visit
      if (formula_eq(f->left, f->right)) return a;
      return and3(a, eval_rec(f->right, fuel, qbound));
    }
    case Conn::Par: case Conn::Plus: {
      Truth a = eval_rec(f->left, fuel, qbound);
      if (a == Truth::True) return Truth::True;  // short-circuit
      if (formula_eq(f->left, f->right)) return a;
      return or3(a, eval_rec(f->right, fuel, qbound));
    }
    case Conn::Eq:
      return alpha_eq(normalize(f->t1), normalize(f->t2)) ? Truth::True : Truth::False;
    case Conn::Neq:
      return alpha_eq(normalize(f->t1), normalize(f->t2)) ? Truth::False : Truth::True;
    case Conn::Mu: case Conn::Nu:
      if (fuel <= 0) return Truth::Unknown;
      return eval_rec(normalize_terms(unfold_fix(f)), fuel - 1, qbound);
    case Conn::Exists: {
      // A purely positive scope is decided exactly by exhaustive search,
      // which is also much cheaper than enumerating under a recursive eval.
      Truth decided = decide_exists_by_compute(f, fuel);
      if (decided != Truth::Unknown) return decided;
      for (long k = 0; k <= qbound; ++k) {
        Truth t = eval_rec(instantiate_scope(f, numeral(k)), fuel, qbound);
        if (t == Truth::True) return Truth::True;
      }
      return Truth::Unknown;
    }
    case Conn::Forall: {
      // all x. B is the negation of ex x. dual(B).
      FormulaPtr ex = mk_quant(Conn::Exists, f->binder_hint, dual(f->left));
      Truth decided = truth_not(decide_exists_by_compute(ex, fuel));
      if (decided != Truth::Unknown) return decided;
      for (long k = 0; k <= qbound; ++k) {
        Truth t = eval_rec(instantiate_scope(f, numeral(k)), fuel, qbound);
        if (t == Truth::False) return Truth::False;
      }
      return Truth::Unknown;
    }
    case Conn::PredVar:
      throw FormulaError("eval: unbound predicate variable");
    case Conn::Bang: case Conn::Quest:
      throw FormulaError("eval: unexpanded exponential");
  }
  throw FormulaError("eval: malformed formula");
}

}  // namespace

Truth eval_bounded(const FormulaPtr& f, long fuel, long qbound) {
  if (!free_vars(f).empty())
    throw FormulaError("eval: formula must be closed");
  FormulaPtr g = contains_exponential(f) ? expand_exponentials(f) : f;
  return eval_rec(normalize_terms(g), fuel, qbound);
}

Truth eval_bounded(const UFormulaPtr& u, long fuel, long qbound) {
  UFormulaPtr v = contains_hatted(u) ? peano_translate(u) : u;
  std::vector<bool> choices(static_cast<std::size_t>(propositional_count(v)), false);
  return eval_bounded(polarize(v, choices), fuel, qbound);
}

SweepReport soundness_sweep(
    const std::vector<std::pair<std::string, Sequent>>& accepted, long fuel,
    long qbound) {
  SweepReport rep;
  for (auto& [name, seq] : accepted) {
    bool open = false;
    for (auto& f : seq.formulas)
      if (!free_vars(f).empty()) open = true;
    if (open || seq.formulas.empty()) {
      ++rep.skipped_open;
      continue;
    }
    FormulaPtr whole = seq.formulas[0];
    for (std::size_t i = 1; i < seq.formulas.size(); ++i)
      whole = mk_binary(Conn::Par, whole, seq.formulas[i]);
    Truth t = eval_bounded(whole, fuel, qbound);
    rep.entries.push_back({name, t});
    if (t == Truth::True) ++rep.true_count;
    else if (t == Truth::False) ++rep.false_count;
    else ++rep.unknown_count;
  }
  return rep;
}

}  // namespace mumall
