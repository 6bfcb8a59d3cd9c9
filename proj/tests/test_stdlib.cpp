#include "doctest.h"

#include <set>

#include "gen.hpp"
#include "mumall/stdlib.hpp"

using namespace mumall;

TEST_CASE("standard definitions are present with the right arities") {
  const SourceFile& env = standard_definitions();
  for (auto [name, arity] : {std::pair<const char*, int>{"nat", 1},
                             {"plus", 3},
                             {"mult", 3},
                             {"ack", 3},
                             {"singleton", 1}}) {
    const Definition* d = env.find_definition(name);
    CAPTURE(name);
    REQUIRE(d != nullptr);
    CHECK(d->is_pred);
    CHECK(d->fix_conn == Conn::Mu);
    CHECK(d->body->arity == arity);
    CHECK(body_eq(d->body, std_body(name)));
    CHECK(is_purely_positive(mk_fix(
        Conn::Mu, d->body, std::vector<TermPtr>(arity, numeral(0)))));
  }
  for (const char* name : {"unat", "uplus", "umult"}) {
    const UDefinition* u = env.find_udefinition(name);
    CAPTURE(name);
    REQUIRE(u != nullptr);
    CHECK(u->is_pred);
  }
  CHECK_THROWS(std_body("nonsuch"));
}

TEST_CASE("definition table includes the question-mark body") {
  auto defs = definitions();
  bool found = false;
  for (const NamedBody& nb : defs) {
    if (nb.name == "quest-body") {
      found = true;
      CHECK(nb.conn == Conn::Mu);
      CHECK(nb.body->arity == 0);
      // bot + (p | p) + HOLE
      const FormulaPtr& f = nb.body->form;
      CHECK(f->conn == Conn::Plus);
      CHECK(f->left->conn == Conn::Bot);
      CHECK(f->right->left->conn == Conn::Par);
      CHECK(f->right->left->left->conn == Conn::PredVar);
    }
  }
  CHECK(found);
  CHECK(defs.size() >= 6);
}

TEST_CASE("derived structural rules check in core") {
  gen::Rng rng(55);
  RuleSet core;
  int instances = 0;
  for (int i = 0; i < 12; ++i) {
    FormulaPtr b = gen::formula(rng, {}, 0, 5);
    FormulaPtr qb = expand_exponentials(mk_exp(Conn::Quest, b));
    CAPTURE(print_formula(b));

    // weakening: |- ?B, 1 from |- 1
    {
      Sequent goal;
      goal.formulas = {qb, mk_unit(Conn::One)};
      ProofNodePtr p = derived_structural(StructRule::W, 0, mk_proof("one"));
      CHECK(check(*p, goal, core).ok);
    }
    // dereliction: |- ?B, dual B from |- B, dual B
    Sequent dgoal;
    dgoal.formulas = {qb, dual(b)};
    ProofNodePtr der =
        derived_structural(StructRule::D, 0, derive_init(b, Signature()));
    CHECK(check(*der, dgoal, core).ok);

    // contraction: |- ?B, dual B from |- ?B, ?B, dual B, where the premise
    // weakens one copy away and derelicts the other
    ProofNodePtr two = derived_structural(StructRule::W, 0, der);
    ProofNodePtr con = derived_structural(StructRule::C, 0, two);
    CHECK(check(*con, dgoal, core).ok);
    ++instances;
  }
  CHECK(instances >= 10);
}

TEST_CASE("peano axioms are named and well formed") {
  auto axioms = peano_axioms();
  REQUIRE(axioms.size() == 7);
  std::set<std::string> names;
  for (const PeanoAxiom& ax : axioms) {
    CHECK(ax.axiom != nullptr);
    names.insert(ax.name);
  }
  CHECK(names.size() == axioms.size());  // no duplicates
}
