#include "doctest.h"

#include "mumall/unify.hpp"

using namespace mumall;

namespace {
TermPtr s(TermPtr t) { return mk_app(mk_ctor("s"), std::move(t)); }
}

TEST_CASE("mgu basic cases") {
  // x = s 0
  auto th = mgu(mk_var("x"), numeral(1));
  REQUIRE(th.has_value());
  CHECK(alpha_eq(th->lookup("x"), numeral(1)));

  // s x = s y binds the left variable
  th = mgu(s(mk_var("x")), s(mk_var("y")));
  REQUIRE(th.has_value());
  CHECK(th->binds("x"));
  CHECK(alpha_eq(th->lookup("x"), mk_var("y")));

  // identical terms unify with the empty substitution
  th = mgu(numeral(3), numeral(3));
  REQUIRE(th.has_value());
  CHECK(th->empty());
}

TEST_CASE("mgu failures") {
  CHECK(!mgu(numeral(0), numeral(1)).has_value());
  CHECK(!mgu(s(mk_var("x")), numeral(0)).has_value());       // ctor clash
  CHECK(!mgu(mk_var("x"), s(mk_var("x"))).has_value());      // occurs check
  CHECK(!mgu(s(s(mk_var("x"))), s(numeral(0))).has_value()); // deep clash
}

TEST_CASE("mgu is a unifier and idempotent") {
  ConstructorTable ctors;
  ctors.declare("pair", 2);
  TermPtr a = mk_app(mk_app(mk_ctor("pair"), mk_var("x")), s(mk_var("x")));
  TermPtr b = mk_app(mk_app(mk_ctor("pair"), numeral(2)), mk_var("y"));
  auto th = mgu(a, b);
  REQUIRE(th.has_value());
  CHECK(alpha_eq(apply_subst(a, *th), apply_subst(b, *th)));
  // idempotent: applying twice changes nothing
  CHECK(alpha_eq(apply_subst(apply_subst(a, *th), *th), apply_subst(a, *th)));
}

TEST_CASE("compose applies left then right") {
  Substitution theta = Substitution::singleton("x", s(mk_var("y")));
  Substitution phi = Substitution::singleton("y", numeral(0));
  Substitution c = compose(theta, phi);
  CHECK(alpha_eq(apply_subst(mk_var("x"), c), numeral(1)));
  CHECK(alpha_eq(apply_subst(mk_var("y"), c), numeral(0)));
  // agreement with sequential application on a sample term
  TermPtr t = mk_app(mk_app(mk_var("f"), mk_var("x")), mk_var("y"));
  CHECK(alpha_eq(apply_subst(t, c), apply_subst(apply_subst(t, theta), phi)));
}

TEST_CASE("signature update removes the domain, adds range variables") {
  Signature sig({"x", "z"});
  Substitution theta = Substitution::singleton("x", s(mk_var("w")));
  Signature got = signature_update(sig, theta);
  CHECK(!got.contains("x"));
  CHECK(got.contains("z"));
  CHECK(got.contains("w"));
}

TEST_CASE("signature freshness") {
  Signature sig({"x", "x1"});
  std::string f = sig.fresh("x");
  CHECK(!sig.contains(f));
  sig.add(f);
  CHECK(sig.contains(f));
  std::string g = sig.fresh("x");
  CHECK(g != f);
}
