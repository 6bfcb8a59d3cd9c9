// Acceptance gate: one pass/fail line per criterion.  Exit status is the
// number of failing criteria (the stretch item reports SKIP and never fails).

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "gen.hpp"
#include "mumall/compute.hpp"
#include "mumall/semantics.hpp"
#include "mumall/stdlib.hpp"
#include "mumall/syntax.hpp"

using namespace mumall;
using Clock = std::chrono::steady_clock;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string corpus(const std::string& name) {
  return std::string(MUMALL_CORPUS_DIR) + "/" + name;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool check_named_proof(const SourceFile& file, const ProofDecl& p,
                       const RuleSet& rules) {
  const TheoremDecl* thm = file.find_theorem(p.name);
  if (!thm) return false;
  Sequent goal;
  goal.formulas = {thm->formula};
  return check(*p.tree, goal, rules).ok;
}

bool check_source(const std::string& text) {
  SourceFile file = parse_file(text);
  if (file.proofs.empty()) return false;
  return check_named_proof(file, file.proofs[0], file.proofs[0].rules);
}

long ack_oracle(long m, long n) {
  if (m == 0) return n + 1;
  if (n == 0) return ack_oracle(m - 1, 1);
  return ack_oracle(m - 1, ack_oracle(m, n - 1));
}

std::string replace_once(std::string text, const std::string& from,
                         const std::string& to) {
  auto at = text.find(from);
  if (at == std::string::npos) throw std::runtime_error("pattern not found: " + from);
  text.replace(at, from.size(), to);
  return text;
}

// 1: the shipped guess-and-check proof is accepted and three mutations
// (wrong witness, wrong branch, stale eigenvariable) are rejected, quickly.
bool criterion1(std::string& detail) {
  auto t0 = Clock::now();
  std::string plus22 = slurp(corpus("plus22_guess.mumall"));
  std::string total = slurp(corpus("plus_total.mumall"));
  bool ok = check_source(plus22);
  ok = ok && !check_source(replace_once(plus22, "exists(0, 4)", "exists(0, 3)"));
  ok = ok && !check_source(replace_once(plus22, "oplus(0, 1)", "oplus(0, 0)"));
  ok = ok && !check_source(replace_once(total, "forall(1, c)", "forall(1, x1)"));
  double dt = seconds_since(t0);
  ok = ok && dt < 1.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "4 checks in %.3fs", dt);
  detail = buf;
  return ok;
}

// 2: the computation engine reproduces arithmetic, including ack(3,3)=61
// within the time budget.
bool criterion2(std::string& detail) {
  auto run = [](const char* name, long a, long b) -> std::optional<long> {
    SearchResult r = search(std_body(name), {numeral(a), numeral(b)}, {});
    if (r.status != SearchStatus::Found) return std::nullopt;
    return term_to_numeral(r.value);
  };
  for (long a = 0; a <= 5; ++a) {
    for (long b = 0; b <= 5; ++b) {
      if (run("plus", a, b) != a + b) return false;
      if (run("mult", a, b) != a * b) return false;
    }
  }
  for (long m = 0; m <= 2; ++m)
    for (long n = 0; n <= 3; ++n)
      if (run("ack", m, n) != ack_oracle(m, n)) return false;
  auto t0 = Clock::now();
  SearchStrategy big;
  big.fuel = 100000000;
  SearchResult r = search(std_body("ack"), {numeral(3), numeral(3)}, big);
  double dt = seconds_since(t0);
  if (r.status != SearchStatus::Found || term_to_numeral(r.value) != 61)
    return false;
  if (dt >= 60.0) return false;
  char buf[96];
  std::snprintf(buf, sizeof buf, "grids ok, ack(3,3)=61 in %.1fs (%ld steps)",
                dt, r.transitions);
  detail = buf;
  return true;
}

// 3: every successful query run can be replayed as a Core proof accepted by
// the kernel.
bool criterion3(std::string& detail) {
  RuleSet core;
  int certified = 0;
  for (const char* fname : {"arith.mumall", "singleton.mumall"}) {
    SourceFile file = parse_file(slurp(corpus(fname)), fname);
    for (const QueryDecl& q : file.queries) {
      const Definition* d = file.find_definition(q.pred);
      if (!d || !d->is_pred) return false;
      SearchStrategy strat;
      strat.fuel = 100000000;
      SearchResult r = search(d->body, q.args, strat);
      if (r.status != SearchStatus::Found) return false;
      ProofNodePtr proof = certify(d->body, q.args, r.value, strat.fuel);
      Sequent goal;
      goal.formulas = {certified_goal(d->body, q.args)};
      if (!check(*proof, goal, core).ok) return false;
      ++certified;
    }
  }
  detail = std::to_string(certified) + " queries certified and checked";
  return certified >= 6;
}

// 4: dual is an involution, the hierarchy classifier separates the standard
// examples, and polarization round-trips through every choice vector.
bool criterion4(std::string& detail) {
  gen::Rng rng(101);
  for (int i = 0; i < 10000; ++i) {
    FormulaPtr f = gen::formula(rng, {"x", "y"}, 0, 10);
    if (!formula_eq(dual(dual(f)), f)) return false;
  }
  auto cls = [](const FormulaPtr& f) { return hierarchy_to_string(classify(f)); };
  auto fix = [](const char* name, int arity) {
    return mk_fix(Conn::Mu, std_body(name),
                  std::vector<TermPtr>(arity, numeral(0)));
  };
  if (cls(fix("nat", 1)) != "P1") return false;
  if (cls(fix("plus", 3)) != "P1") return false;
  if (cls(fix("mult", 3)) != "P1") return false;
  if (cls(fix("ack", 3)) != "P1") return false;
  if (cls(dual(fix("nat", 1))) == "P1") return false;
  if (cls(parse_formula("all x. all y. (x = y | x != y)")) != "N2") return false;
  if (cls(parse_formula("all x. all y. (x = y + x != y)")) != "N3") return false;

  long trips = 0;
  for (int n = 1; n <= 6; ++n) {
    UFormulaPtr u;
    do {
      u = gen::uformula(rng, 0, n + 3);
    } while (propositional_count(u) != n);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<bool> choices(n);
      for (int b = 0; b < n; ++b) choices[b] = (mask >> b) & 1;
      FormulaPtr p = polarize(u, choices);
      if (!uformula_eq(depolarize(p), u)) return false;
      ++trips;
    }
  }
  detail = "involution x10000, labels ok, " + std::to_string(trips) +
           " polarization round trips";
  return true;
}

// 5: derived weakening, dereliction, and contraction check in Core over
// at least ten distinct expanded ?-formulas.
bool criterion5(std::string& detail) {
  gen::Rng rng(102);
  RuleSet core;
  int instances = 0;
  for (int i = 0; i < 12; ++i) {
    FormulaPtr b = gen::formula(rng, {}, 0, 5);
    FormulaPtr qb = expand_exponentials(mk_exp(Conn::Quest, b));
    Sequent wgoal;
    wgoal.formulas = {qb, mk_unit(Conn::One)};
    if (!check(*derived_structural(StructRule::W, 0, mk_proof("one")), wgoal,
               core).ok)
      return false;
    Sequent dgoal;
    dgoal.formulas = {qb, dual(b)};
    ProofNodePtr der =
        derived_structural(StructRule::D, 0, derive_init(b, Signature()));
    if (!check(*der, dgoal, core).ok) return false;
    ProofNodePtr two = derived_structural(StructRule::W, 0, der);
    if (!check(*derived_structural(StructRule::C, 0, two), dgoal, core).ok)
      return false;
    instances += 3;
  }
  detail = std::to_string(instances) + " derived instances checked";
  return instances >= 30;
}

// 6: no conclusion the kernel accepts evaluates to false in the bounded
// standard model, and the empty sequent is underivable by any single rule.
bool criterion6(std::string& detail) {
  std::vector<std::pair<std::string, Sequent>> accepted;
  for (const char* fname : {"arith.mumall", "peano.mumall",
                            "plus22_guess.mumall", "plus_total.mumall",
                            "singleton.mumall", "structural.mumall"}) {
    SourceFile file = parse_file(slurp(corpus(fname)), fname);
    for (const ProofDecl& p : file.proofs) {
      if (!check_named_proof(file, p, p.rules)) return false;
      Sequent s;
      s.formulas = {file.find_theorem(p.name)->formula};
      accepted.push_back({p.name, s});
    }
  }
  SweepReport rep = soundness_sweep(accepted, 50, 8);
  if (rep.false_count != 0) return false;

  Sequent empty;
  RuleSet all;
  all.mode = Mode::MuLKPlus;
  for (const char* rule :
       {"one", "top", "eq", "munu", "init", "tensor", "par", "bot", "with",
        "oplus", "neq", "exists", "forall", "mu", "nu", "unfold", "cut",
        "contract", "weaken", "id", "cnn", "wq", "cq", "dq"}) {
    auto n = std::make_shared<ProofNode>();
    n->rule = rule;
    n->principal = 0;
    n->witness = numeral(0);
    n->cut_formula = mk_unit(Conn::One);
    if (check(*n, empty, all).ok) return false;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf,
                "%zu accepted sequents, sweep %ld true / %ld unknown / 0 false",
                accepted.size(), rep.true_count, rep.unknown_count);
  detail = buf;
  return true;
}

// 7: the arithmetic corpus checks with structural rules, and the induction
// proof is rejected once invariants are restricted to purely positive ones.
bool criterion7(std::string& detail) {
  SourceFile file = parse_file(slurp(corpus("peano.mumall")), "peano.mumall");
  for (const ProofDecl& p : file.proofs)
    if (!check_named_proof(file, p, p.rules)) return false;
  const ProofDecl* ind = nullptr;
  for (const ProofDecl& p : file.proofs)
    if (p.name == "induction_nat") ind = &p;
  if (!ind) return false;
  RuleSet restricted = ind->rules;
  restricted.sigma1_invariants = true;
  if (check_named_proof(file, *ind, restricted)) return false;
  detail = std::to_string(file.proofs.size()) +
           " proofs pass, induction rejected under the invariant restriction";
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    const char* title;
    std::function<bool(std::string&)> run;
  };
  std::vector<Criterion> criteria = {
      {"kernel accepts the shipped proof and rejects mutations", criterion1},
      {"computation engine matches arithmetic up to ack(3,3)", criterion2},
      {"query runs replay into checkable proofs", criterion3},
      {"dual/classify/polarize invariants hold", criterion4},
      {"derived structural rules check in the core", criterion5},
      {"accepted conclusions survive the model sweep", criterion6},
      {"structural modes prove induction, restriction rejects it", criterion7},
  };
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    std::string detail;
    bool ok = false;
    try {
      ok = criteria[i].run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::printf("criterion %zu: %s - %s%s%s\n", i + 1, ok ? "PASS" : "FAIL",
                criteria[i].title, detail.empty() ? "" : ": ", detail.c_str());
    std::fflush(stdout);
  }
  std::printf(
      "criterion 8: SKIP - totality of ack in the core calculus after "
      "exponential expansion (not attempted; see README)\n");
  return failures;
}
