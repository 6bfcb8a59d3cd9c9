#include "doctest.h"

#include <fstream>
#include <sstream>

#include "gen.hpp"
#include "mumall/checker.hpp"
#include "mumall/syntax.hpp"

using namespace mumall;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

CheckReport check_first_proof(const SourceFile& file, RuleSet rules) {
  REQUIRE(!file.proofs.empty());
  const ProofDecl& p = file.proofs[0];
  Sequent goal;
  goal.formulas = {file.find_theorem(p.name)->formula};
  return check(*p.tree, goal, rules);
}

CheckReport check_source(const std::string& text) {
  SourceFile file = parse_file(text);
  return check_first_proof(file, file.proofs[0].rules);
}

}  // namespace

TEST_CASE("shipped guess-and-check proof and its mutations") {
  std::string text = slurp(std::string(MUMALL_CORPUS_DIR) + "/plus22_guess.mumall");
  CHECK(check_source(text).ok);

  SUBCASE("wrong witness is rejected") {
    std::string bad = text;
    auto at = bad.find("exists(0, 4)");
    REQUIRE(at != std::string::npos);
    bad.replace(at, 12, "exists(0, 3)");
    CHECK(!check_source(bad).ok);
  }
  SUBCASE("wrong oplus branch is rejected") {
    std::string bad = text;
    auto at = bad.find("oplus(0, 1)");
    REQUIRE(at != std::string::npos);
    bad.replace(at, 11, "oplus(0, 0)");
    CHECK(!check_source(bad).ok);
  }
}

TEST_CASE("stale eigenvariable is rejected") {
  std::string text = slurp(std::string(MUMALL_CORPUS_DIR) + "/plus_total.mumall");
  CHECK(check_source(text).ok);
  // reuse the outer eigenvariable x1 as the inner one
  std::string bad = text;
  auto at = bad.find("forall(1, c)");
  REQUIRE(at != std::string::npos);
  bad.replace(at, 12, "forall(1, x1)");
  CheckReport r = check_source(bad);
  CHECK(!r.ok);
  CHECK(r.rule == "forall");
}

TEST_CASE("empty sequent is rejected by every rule") {
  Sequent empty;
  RuleSet rules;
  rules.mode = Mode::MuLKPlus;
  for (const char* rule :
       {"one", "top", "eq", "munu", "init", "tensor", "par", "bot", "with",
        "oplus", "neq", "exists", "forall", "mu", "nu", "unfold", "cut",
        "contract", "weaken", "id", "cnn", "wq", "cq", "dq"}) {
    auto* n = new ProofNode();
    n->rule = rule;
    n->principal = 0;
    n->witness = numeral(0);
    n->cut_formula = mk_unit(Conn::One);
    CAPTURE(rule);
    CHECK(!check(*ProofNodePtr(n), empty, rules).ok);
  }
}

TEST_CASE("admissible and structural rules are mode-gated") {
  SUBCASE("unfold needs core+") {
    SourceFile file = parse_file(
        "define cotriv := nu (N x => top)\n"
        "theorem t : cotriv 0\n"
        "proof t core { unfold(0) { top(0) } }");
    RuleSet rules = file.proofs[0].rules;
    CHECK(!check_first_proof(file, rules).ok);
    rules.mode = Mode::CorePlusAdmissible;
    CHECK(check_first_proof(file, rules).ok);
    rules.mode = Mode::MuLK;
    CHECK(check_first_proof(file, rules).ok);
  }

  SUBCASE("weaken needs mulk") {
    SourceFile file = parse_file(
        "theorem t : bot | 1\nproof t core { par(0) { weaken(0) { one } } }");
    RuleSet rules;
    CHECK(!check_first_proof(file, rules).ok);
    rules.mode = Mode::CorePlusAdmissible;
    CHECK(!check_first_proof(file, rules).ok);
    rules.mode = Mode::MuLK;
    CHECK(check_first_proof(file, rules).ok);
  }

  SUBCASE("contract needs mulk") {
    // |- top | top contracts and closes on the copy
    SourceFile file = parse_file(
        "theorem t : top | bot\nproof t core { par(0) { contract(0) { "
        "weaken(1) { top(0) } } } }");
    RuleSet rules;
    rules.mode = Mode::CorePlusAdmissible;
    CHECK(!check_first_proof(file, rules).ok);
    rules.mode = Mode::MuLK;
    CHECK(check_first_proof(file, rules).ok);
  }

  SUBCASE("cut needs core+ or mulk+") {
    SourceFile file = parse_file(
        "theorem t : 1\nproof t core+ { cut(1, []) { one; bot(1) { one } } }");
    RuleSet rules;
    CHECK(!check_first_proof(file, rules).ok);  // core
    rules.mode = Mode::CorePlusAdmissible;
    CHECK(check_first_proof(file, rules).ok);
    rules.mode = Mode::MuLK;
    CHECK(!check_first_proof(file, rules).ok);
    rules.mode = Mode::MuLKPlus;
    CHECK(check_first_proof(file, rules).ok);
  }
}

TEST_CASE("derive_init proves A, dual(A) for random formulas") {
  gen::Rng rng(31);
  RuleSet core;
  for (int i = 0; i < 300; ++i) {
    FormulaPtr a = gen::formula(rng, {"x", "y"}, 0, 8);
    Sequent goal;
    goal.sig.add("x");
    goal.sig.add("y");
    goal.formulas = {a, dual(a)};
    ProofNodePtr p = derive_init(a, goal.sig);
    CAPTURE(print_formula(a));
    CHECK(check(*p, goal, core).ok);
  }
}

TEST_CASE("id macro demands dual formulas") {
  Sequent goal;
  goal.formulas = {mk_unit(Conn::One), mk_unit(Conn::Bot)};
  CHECK(check(*mk_proof("id"), goal, RuleSet{}).ok);
  goal.formulas = {mk_unit(Conn::One), mk_unit(Conn::One)};
  CHECK(!check(*mk_proof("id"), goal, RuleSet{}).ok);
}

TEST_CASE("exists witness must live in the signature") {
  SourceFile file = parse_file(
      "theorem t : ex x. x = x\nproof t core { exists(0, w) { eq } }");
  CHECK(!check_first_proof(file, file.proofs[0].rules).ok);
  SourceFile ok = parse_file(
      "theorem t : ex x. x = x\nproof t core { exists(0, 5) { eq } }");
  CHECK(check_first_proof(ok, ok.proofs[0].rules).ok);
}

TEST_CASE("tensor split must select valid context indices") {
  SourceFile file = parse_file(
      "theorem t : (1 * 1) | bot\n"
      "proof t core { par(0) { tensor(0, [5]) { one; bot(1) { one } } } }");
  CHECK(!check_first_proof(file, file.proofs[0].rules).ok);
}

TEST_CASE("nu invariant arity must match") {
  SourceFile file = parse_file(
      "define conat := nu (N x => x != 0 & (all x'. (x != s x' | N x')))\n"
      "theorem t : conat 0 | 1\n"
      "proof t core { par(0) { nu(0, (a b => a = b)) { one; one } } }");
  CheckReport r = check_first_proof(file, file.proofs[0].rules);
  CHECK(!r.ok);
  CHECK(r.rule == "nu");
}

TEST_CASE("sigma1 restriction is tied to the structural modes") {
  SourceFile file = parse_file("theorem t : 1\nproof t core { one }");
  RuleSet rules;
  rules.sigma1_invariants = true;
  CHECK(!check_first_proof(file, rules).ok);
  rules.mode = Mode::MuLK;
  CHECK(check_first_proof(file, rules).ok);
}

TEST_CASE("failure reports point into the tree") {
  std::string text = slurp(std::string(MUMALL_CORPUS_DIR) + "/plus22_guess.mumall");
  std::string bad = text;
  auto at = bad.find("exists(0, 4)");
  bad.replace(at, 12, "exists(0, 3)");
  CheckReport r = check_source(bad);
  REQUIRE(!r.ok);
  CHECK(!r.path.empty());
  CHECK(!r.sequent.empty());
  CHECK(!r.message.empty());
}
