#include "doctest.h"

#include "mumall/compute.hpp"
#include "mumall/semantics.hpp"
#include "mumall/stdlib.hpp"
#include "mumall/syntax.hpp"

using namespace mumall;

namespace {

long ack_oracle(long m, long n) {
  if (m == 0) return n + 1;
  if (n == 0) return ack_oracle(m - 1, 1);
  return ack_oracle(m - 1, ack_oracle(m, n - 1));
}

std::optional<long> run(const BodyPtr& pred, long a, long b,
                        SearchStrategy strat = {}) {
  SearchResult r = search(pred, {numeral(a), numeral(b)}, strat);
  if (r.status != SearchStatus::Found) return std::nullopt;
  return term_to_numeral(r.value);
}

}  // namespace

TEST_CASE("plus and mult agree with arithmetic on a grid") {
  BodyPtr plus = std_body("plus");
  BodyPtr mult = std_body("mult");
  for (long a = 0; a <= 5; ++a) {
    for (long b = 0; b <= 5; ++b) {
      CAPTURE(a);
      CAPTURE(b);
      CHECK(run(plus, a, b) == a + b);
      CHECK(run(mult, a, b) == a * b);
    }
  }
}

TEST_CASE("ack agrees with the recursive oracle") {
  BodyPtr ack = std_body("ack");
  for (long m = 0; m <= 2; ++m) {
    for (long n = 0; n <= 3; ++n) {
      CAPTURE(m);
      CAPTURE(n);
      CHECK(run(ack, m, n) == ack_oracle(m, n));
    }
  }
  CHECK(run(ack, 3, 2) == ack_oracle(3, 2));  // 29
}

TEST_CASE("functional predicates have exactly one success value") {
  BodyPtr plus = std_body("plus");
  auto vals = enumerate_successes(plus, {numeral(3), numeral(4)}, 100000);
  REQUIRE(vals.size() == 1);
  CHECK(term_to_numeral(vals[0]) == 7);

  // singleton's search space is infinite; a bounded scan still finds only 0
  BodyPtr single = std_body("singleton");
  auto sv = enumerate_successes(single, {}, 2000);
  REQUIRE(sv.size() == 1);
  CHECK(term_to_numeral(sv[0]) == 0);
}

TEST_CASE("strategies agree on functional predicates") {
  BodyPtr mult = std_body("mult");
  SearchStrategy dfs;
  SearchStrategy idd;
  idd.kind = StrategyKind::IterativeDeepening;
  SearchStrategy rnd;
  rnd.kind = StrategyKind::RandomizedDfs;
  rnd.seed = 17;
  for (long a = 0; a <= 3; ++a) {
    for (long b = 0; b <= 3; ++b) {
      CAPTURE(a);
      CAPTURE(b);
      CHECK(run(mult, a, b, dfs) == a * b);
      CHECK(run(mult, a, b, idd) == a * b);
      CHECK(run(mult, a, b, rnd) == a * b);
    }
  }
}

TEST_CASE("exhaustion and fuel are distinguished") {
  // x = 1 never matches 0, so the whole space dies out
  SourceFile env = parse_file("define only1 := mu (P x y => x = 1 * y = 0)");
  BodyPtr only1 = env.find_definition("only1")->body;
  SearchResult r = search(only1, {numeral(0)}, {});
  CHECK(r.status == SearchStatus::Exhausted);

  SearchStrategy tiny;
  tiny.fuel = 3;
  SearchResult f = search(std_body("ack"), {numeral(3), numeral(3)}, tiny);
  CHECK(f.status == SearchStatus::OutOfFuel);
  CHECK(f.transitions <= 3);
}

TEST_CASE("traces are produced on demand") {
  SearchResult r = search(std_body("plus"), {numeral(1), numeral(1)}, {}, true);
  REQUIRE(r.status == SearchStatus::Found);
  CHECK(!r.trace.empty());
  CHECK(r.transitions >= (long)r.trace.size());
}

TEST_CASE("search rejects goals that are not purely positive") {
  SourceFile env = parse_file(
      "define conat := nu (N x => x != 0 & (all x'. (x != s x' | N x')))\n"
      "define bad := mu (P x y => conat x * y = 0)");
  CHECK_THROWS(search(env.find_definition("bad")->body, {numeral(0)}, {}));
}

TEST_CASE("certify replays a run into a checkable proof") {
  RuleSet core;
  for (auto [name, a, b] : {std::tuple<const char*, long, long>{"plus", 2, 2},
                            {"plus", 0, 4},
                            {"mult", 2, 3},
                            {"ack", 1, 2}}) {
    BodyPtr pred = std_body(name);
    std::vector<TermPtr> args = {numeral(a), numeral(b)};
    SearchResult r = search(pred, args, {});
    REQUIRE(r.status == SearchStatus::Found);
    ProofNodePtr proof = certify(pred, args, r.value);
    Sequent goal;
    goal.formulas = {certified_goal(pred, args)};
    CAPTURE(name);
    CHECK(check(*proof, goal, core).ok);
  }
}

TEST_CASE("certify refuses values no run reaches") {
  BodyPtr plus = std_body("plus");
  CHECK_THROWS(certify(plus, {numeral(2), numeral(2)}, numeral(5)));
}

TEST_CASE("transition system basics") {
  // initial state of plus 1 1: one goal, fresh output variable
  BodyPtr plus = std_body("plus");
  ComputeState s;
  s.sig.add("y");
  s.goals = {mk_fix(Conn::Mu, plus, {numeral(1), numeral(1), mk_var("y")})};
  s.value = mk_var("y");
  CHECK(!is_success(s));
  auto next = transitions(s);
  REQUIRE(next.size() == 1);  // mu unfolds deterministically
  CHECK(next[0].goals.size() == 1);
  CHECK(next[0].goals[0]->conn == Conn::Plus);

  ComputeState done;
  done.value = numeral(2);
  CHECK(is_success(done));
}
