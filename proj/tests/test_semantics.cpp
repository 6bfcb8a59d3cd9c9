#include "doctest.h"

#include "gen.hpp"
#include "mumall/semantics.hpp"
#include "mumall/stdlib.hpp"
#include "mumall/syntax.hpp"

using namespace mumall;

namespace {
const SourceFile& env() { return standard_definitions(); }
}

TEST_CASE("ground arithmetic facts evaluate correctly") {
  CHECK(eval_bounded(parse_formula("ex u. plus 2 2 u * nat u", env()), 30, 8) ==
        Truth::True);
  CHECK(eval_bounded(parse_formula("ex u. plus 2 2 u * u = 5", env()), 30, 8) ==
        Truth::False);
  CHECK(eval_bounded(parse_formula("plus 2 2 4", env()), 30, 8) == Truth::True);
  CHECK(eval_bounded(parse_formula("plus 2 2 5", env()), 30, 8) == Truth::False);
  CHECK(eval_bounded(parse_formula("0 = 0"), 5, 5) == Truth::True);
  CHECK(eval_bounded(parse_formula("0 != 0"), 5, 5) == Truth::False);
  CHECK(eval_bounded(parse_formula("1"), 5, 5) == Truth::True);
  CHECK(eval_bounded(parse_formula("bot"), 5, 5) == Truth::False);
  CHECK(eval_bounded(parse_formula("top"), 5, 5) == Truth::True);
  CHECK(eval_bounded(parse_formula("0"), 5, 5) == Truth::False);
}

TEST_CASE("quantifiers over the bounded domain") {
  // decidable universal: the dual existential search exhausts (occurs check)
  CHECK(eval_bounded(parse_formula("all x. x != s x"), 20, 6) == Truth::True);
  CHECK(eval_bounded(parse_formula("all x. x = 0"), 20, 6) == Truth::False);
  // compute-backed existential finds a witness beyond qbound
  CHECK(eval_bounded(parse_formula("ex u. plus 5 5 u", env()), 30, 3) ==
        Truth::True);
}

TEST_CASE("verdicts beyond the bounds are Unknown, never wrong") {
  // true for every numeral, but the bounded domain cannot close the forall
  CHECK(eval_bounded(parse_formula("all x. nat x", env()), 10, 4) ==
        Truth::Unknown);
  // conat is the dual of nat, so it fails on every numeral
  FormulaPtr conat0 = parse_formula("conat 0", parse_file(
      "define conat := nu (N x => x != 0 & (all x'. (x != s x' | N x')))"));
  CHECK(eval_bounded(conat0, 30, 4) == Truth::False);
}

TEST_CASE("raising bounds never flips a decided verdict") {
  gen::Rng rng(41);
  for (int i = 0; i < 150; ++i) {
    FormulaPtr f = gen::formula(rng, {}, 0, 6);
    Truth low = eval_bounded(f, 4, 3);
    Truth high = eval_bounded(f, 10, 6);
    CAPTURE(print_formula(f));
    if (low == Truth::True) CHECK(high == Truth::True);
    if (low == Truth::False) CHECK(high == Truth::False);
  }
}

TEST_CASE("dual negates decided verdicts") {
  gen::Rng rng(42);
  for (int i = 0; i < 150; ++i) {
    FormulaPtr f = gen::formula(rng, {}, 0, 6);
    Truth t = eval_bounded(f, 8, 4);
    if (t == Truth::Unknown) continue;
    CAPTURE(print_formula(f));
    CHECK(eval_bounded(dual(f), 8, 4) == truth_not(t));
  }
}

TEST_CASE("polarization is semantically transparent") {
  gen::Rng rng(43);
  for (int i = 0; i < 100; ++i) {
    UFormulaPtr u = gen::uformula(rng, 0, 6);
    int n = propositional_count(u);
    std::vector<bool> all_pos(n, true), all_neg(n, false);
    Truth a = eval_bounded(polarize(u, all_pos), 8, 4);
    Truth b = eval_bounded(polarize(u, all_neg), 8, 4);
    Truth c = eval_bounded(u, 8, 4);
    CAPTURE(print_uformula(u));
    if (a != Truth::Unknown && b != Truth::Unknown) CHECK(a == b);
    if (a != Truth::Unknown && c != Truth::Unknown) CHECK(a == c);
  }
}

TEST_CASE("peano axioms are never refuted in the standard model") {
  // the relativized foralls stay Unknown (their dual searches diverge), but a
  // sound evaluator must not call any axiom false
  for (const PeanoAxiom& ax : peano_axioms()) {
    CAPTURE(ax.name);
    CHECK(eval_bounded(ax.axiom, 10, 3) != Truth::False);
  }
}

TEST_CASE("soundness sweep pars up sequents and skips open ones") {
  Sequent good;
  good.formulas = {parse_formula("0 = 1"), parse_formula("0 != 1")};
  Sequent open;
  open.sig.add("x");
  open.formulas = {parse_formula("x = 0")};
  Sequent bad;
  bad.formulas = {parse_formula("0 = 1")};
  SweepReport rep = soundness_sweep(
      {{"good", good}, {"open", open}, {"bad", bad}}, 10, 5);
  CHECK(rep.true_count == 1);
  CHECK(rep.skipped_open == 1);
  CHECK(rep.false_count == 1);
  REQUIRE(rep.entries.size() == 2);  // skipped sequents get no entry
  CHECK(rep.entries[0].truth == Truth::True);
  CHECK(rep.entries[1].truth == Truth::False);
}

TEST_CASE("truth helpers") {
  CHECK(truth_not(Truth::True) == Truth::False);
  CHECK(truth_not(Truth::False) == Truth::True);
  CHECK(truth_not(Truth::Unknown) == Truth::Unknown);
  CHECK(truth_to_string(Truth::True) == "True");
  CHECK(truth_to_string(Truth::False) == "False");
  CHECK(truth_to_string(Truth::Unknown) == "Unknown");
}
