// Random term/formula generators shared by the unit and acceptance tests.
#ifndef MUMALL_TESTS_GEN_HPP
#define MUMALL_TESTS_GEN_HPP

#include <random>

#include "mumall/stdlib.hpp"
#include "mumall/uformula.hpp"

namespace mumall::gen {

using Rng = std::mt19937;

inline int pick(Rng& rng, int n) {
  return static_cast<int>(rng() % static_cast<unsigned>(n));
}

// A ground first-order term over z/s, or a variable from `vars`, or a Bound
// index below `depth`.
inline TermPtr term(Rng& rng, const std::vector<std::string>& vars, int depth) {
  int c = pick(rng, 10);
  if (c < 5) return numeral(pick(rng, 4));
  if (c < 7 && !vars.empty()) return mk_var(vars[static_cast<std::size_t>(pick(rng, static_cast<int>(vars.size())))]);
  if (c < 9 && depth > 0) return mk_bound(pick(rng, depth));
  return mk_app(mk_ctor("s"), numeral(pick(rng, 3)));
}

// Closed, exponential-free formula with quantifiers and standard fixed
// points.  `depth` counts enclosing term binders; `budget` bounds the size.
inline FormulaPtr formula(Rng& rng, const std::vector<std::string>& vars,
                          int depth, int budget) {
  if (budget <= 0) {
    switch (pick(rng, 4)) {
      case 0: return mk_unit(Conn::One);
      case 1: return mk_unit(Conn::Bot);
      case 2: return mk_eq(term(rng, vars, depth), term(rng, vars, depth));
      default: return mk_neq(term(rng, vars, depth), term(rng, vars, depth));
    }
  }
  switch (pick(rng, 10)) {
    case 0: case 1: case 2: case 3: {
      Conn c = std::vector<Conn>{Conn::Tensor, Conn::Par, Conn::With, Conn::Plus}
          [static_cast<std::size_t>(pick(rng, 4))];
      return mk_binary(c, formula(rng, vars, depth, budget / 2),
                       formula(rng, vars, depth, budget / 2));
    }
    case 4: case 5: {
      Conn c = pick(rng, 2) ? Conn::Forall : Conn::Exists;
      return mk_quant(c, "v", formula(rng, vars, depth + 1, budget - 1));
    }
    case 6: {
      BodyPtr nat = std_body("nat");
      FormulaPtr f = mk_fix(Conn::Mu, nat, {term(rng, vars, depth)});
      return pick(rng, 2) ? f : dual(f);
    }
    case 7: {
      BodyPtr plus = std_body("plus");
      FormulaPtr f = mk_fix(Conn::Mu, plus,
                            {term(rng, vars, depth), term(rng, vars, depth),
                             term(rng, vars, depth)});
      return pick(rng, 2) ? f : dual(f);
    }
    case 8: return mk_unit(pick(rng, 2) ? Conn::Top : Conn::Zero);
    default:
      return mk_eq(term(rng, vars, depth), term(rng, vars, depth));
  }
}

// Unpolarized formula containing exactly the propositional connectives the
// generator happens to emit; used for polarization round trips.
inline UFormulaPtr uformula(Rng& rng, int depth, int budget) {
  if (budget <= 0) {
    switch (pick(rng, 3)) {
      case 0: return umk_eq(term(rng, {}, depth), term(rng, {}, depth));
      case 1: return umk_neq(term(rng, {}, depth), term(rng, {}, depth));
      default: return umk_unit(pick(rng, 2) ? UConn::Tt : UConn::Ff);
    }
  }
  switch (pick(rng, 6)) {
    case 0: case 1: {
      UConn c = pick(rng, 2) ? UConn::And : UConn::Or;
      return umk_binary(c, uformula(rng, depth, budget / 2),
                        uformula(rng, depth, budget / 2));
    }
    case 2: {
      UConn c = pick(rng, 2) ? UConn::Forall : UConn::Exists;
      return umk_quant(c, "v", uformula(rng, depth + 1, budget - 1));
    }
    case 3: return umk_unit(pick(rng, 2) ? UConn::Tt : UConn::Ff);
    default:
      return umk_eq(term(rng, {}, depth), term(rng, {}, depth));
  }
}

}  // namespace mumall::gen

#endif
