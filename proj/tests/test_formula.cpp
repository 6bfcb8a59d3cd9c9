#include "doctest.h"

#include "gen.hpp"
#include "mumall/syntax.hpp"

using namespace mumall;

TEST_CASE("dual is an involution on random formulas") {
  gen::Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    FormulaPtr f = gen::formula(rng, {"x", "y"}, 0, 12);
    CHECK(formula_eq(dual(dual(f)), f));
  }
}

TEST_CASE("dual swaps polarity") {
  gen::Rng rng(8);
  for (int i = 0; i < 500; ++i) {
    FormulaPtr f = gen::formula(rng, {}, 0, 8);
    CHECK(polarity(dual(f)) != polarity(f));
  }
}

TEST_CASE("classify on the standard predicates") {
  auto fix = [](const char* name, std::vector<TermPtr> args) {
    return mk_fix(Conn::Mu, std_body(name), std::move(args));
  };
  auto p1 = [](const FormulaPtr& f) {
    HierarchyClass c = classify(f);
    return c.side == Polarity::Pos && c.level == 1;
  };
  CHECK(p1(fix("nat", {numeral(0)})));
  CHECK(p1(fix("plus", {numeral(0), numeral(0), numeral(0)})));
  CHECK(p1(fix("mult", {numeral(0), numeral(0), numeral(0)})));
  CHECK(p1(fix("ack", {numeral(0), numeral(0), numeral(0)})));
  CHECK(!p1(dual(fix("nat", {numeral(0)}))));
}

TEST_CASE("classify separates par from oplus under negative quantifiers") {
  FormulaPtr n2 = parse_formula("all x. all y. (x = y | x != y)");
  HierarchyClass c2 = classify(n2);
  CHECK(c2.side == Polarity::Neg);
  CHECK(c2.level == 2);
  CHECK(hierarchy_to_string(c2) == "N2");

  FormulaPtr n3 = parse_formula("all x. all y. (x = y + x != y)");
  HierarchyClass c3 = classify(n3);
  CHECK(c3.side == Polarity::Neg);
  CHECK(c3.level == 3);
  CHECK(hierarchy_to_string(c3) == "N3");
}

TEST_CASE("unfolding a fixed point substitutes the whole fixed point") {
  FormulaPtr nat2 = mk_fix(Conn::Mu, std_body("nat"), {numeral(2)});
  FormulaPtr un = unfold_fix(nat2);
  // 2 = 0 + ex x'. 2 = s x' * nat x'
  CHECK(un->conn == Conn::Plus);
  CHECK(un->left->conn == Conn::Eq);
  CHECK(un->right->conn == Conn::Exists);
  CHECK(un->right->left->conn == Conn::Tensor);
  CHECK(un->right->left->right->conn == Conn::Mu);
  // dual commutes with unfolding
  CHECK(formula_eq(dual(un), unfold_fix(dual(nat2))));
}

TEST_CASE("invariant instantiation reaches predicate occurrences under binders") {
  // conat body with invariant S x := x = 5
  BodyPtr conat = dual(std_body("nat"));
  auto s = std::make_shared<PredAbs>();
  s->arity = 1;
  s->form = mk_eq(mk_bound(0), numeral(5));
  s->hints = {"x"};
  FormulaPtr inst = instantiate_body(conat, PredTarget::invariant(s), {numeral(3)});
  FormulaPtr want = parse_formula("3 != 0 & (all x'. (3 != s x' | x' = 5))");
  CHECK(formula_eq(inst, want));
}

TEST_CASE("apply_subst leaves bound structure alone") {
  Substitution theta = Substitution::singleton("x", numeral(1));
  FormulaPtr f = parse_formula("ex v. v = x * nat v",
                               standard_definitions());
  FormulaPtr got = apply_subst(f, theta);
  CHECK(formula_eq(got, parse_formula("ex v. v = 1 * nat v", standard_definitions())));
}

TEST_CASE("exponential expansion") {
  FormulaPtr q = mk_exp(Conn::Quest, mk_eq(numeral(0), numeral(0)));
  FormulaPtr e = expand_exponentials(q);
  CHECK(!contains_exponential(e));
  CHECK(e->conn == Conn::Mu);
  // bot + (q | q) + (0 = 0)
  FormulaPtr un = unfold_fix(e);
  CHECK(un->conn == Conn::Plus);
  CHECK(un->left->conn == Conn::Bot);
  CHECK(un->right->left->conn == Conn::Par);
  CHECK(formula_eq(un->right->left->left, e));
  CHECK(un->right->right->conn == Conn::Eq);
  // !P is the dual of ? of the dual
  FormulaPtr b = mk_exp(Conn::Bang, mk_eq(numeral(0), numeral(0)));
  CHECK(formula_eq(expand_exponentials(b),
                   dual(expand_exponentials(mk_exp(Conn::Quest, mk_neq(numeral(0), numeral(0)))))));
}

TEST_CASE("exponential expansion closure-converts quantified holes") {
  // ? under a quantifier: the hole mentions the quantified variable, so the
  // expansion must lift it into the fixed point's arguments.
  FormulaPtr f = mk_quant(Conn::Exists, "x",
                          mk_exp(Conn::Quest, mk_eq(mk_bound(0), numeral(0))));
  FormulaPtr e = expand_exponentials(f);
  CHECK(!contains_exponential(e));
  FormulaPtr inst = instantiate_scope(e, numeral(4));
  CHECK(inst->conn == Conn::Mu);
  FormulaPtr un = unfold_fix(inst);
  CHECK(formula_eq(un->right->right, mk_eq(numeral(4), numeral(0))));
}

TEST_CASE("purely positive recognizer") {
  CHECK(is_purely_positive(parse_formula("ex u. plus 2 2 u", standard_definitions())));
  CHECK(!is_purely_positive(parse_formula("all x. x = 0")));
  CHECK(!is_purely_positive(parse_formula("conat 0", parse_file(
      "define conat := nu (N x => x != 0 & (all x'. (x != s x' | N x')))"))));
}
