#include "mumall/checker.hpp"

#include <algorithm>
#include <sstream>

#include "mumall/syntax.hpp"

namespace mumall {

ProofNodePtr mk_proof(std::string rule, std::vector<ProofNodePtr> children) {
  auto* n = new ProofNode();
  n->rule = std::move(rule);
  n->children = std::move(children);
  return ProofNodePtr(n);
}

Mode mode_from_string(const std::string& s) {
  if (s == "core") return Mode::Core;
  if (s == "core+") return Mode::CorePlusAdmissible;
  if (s == "mulk") return Mode::MuLK;
  if (s == "mulk+") return Mode::MuLKPlus;
  throw FormulaError("unknown mode '" + s + "'");
}

std::string mode_to_string(Mode m) {
  switch (m) {
    case Mode::Core: return "core";
    case Mode::CorePlusAdmissible: return "core+";
    case Mode::MuLK: return "mulk";
    case Mode::MuLKPlus: return "mulk+";
  }
  return "?";
}

std::string sequent_to_string(const Sequent& s) {
  std::ostringstream os;
  if (!s.sig.empty()) {
    for (std::size_t i = 0; i < s.sig.names().size(); ++i)
      os << (i ? ", " : "") << s.sig.names()[i];
    os << " ; ";
  }
  os << "|-";
  for (std::size_t i = 0; i < s.formulas.size(); ++i)
    os << (i ? "," : "") << " " << print_formula(s.formulas[i]);
  return os.str();
}

namespace {

bool allows_unfold_init(Mode m) { return m != Mode::Core; }
bool allows_cut(Mode m) {
  return m == Mode::CorePlusAdmissible || m == Mode::MuLKPlus;
}
bool allows_structural(Mode m) { return m == Mode::MuLK || m == Mode::MuLKPlus; }

struct Checker {
  RuleSet rules;
  CheckReport report;

  bool fail(const ProofNode& node, const Sequent& seq, const std::string& path,
            const std::string& msg) {
    if (report.ok) {
      report.ok = false;
      report.path = path.empty() ? "." : path;
      report.rule = node.rule;
      report.message = msg;
      report.sequent = sequent_to_string(seq);
    }
    return false;
  }

  bool check_node(const ProofNode& node, const Sequent& seq, const std::string& path);

  bool check_children(const ProofNode& node, const std::vector<Sequent>& premises,
                      const Sequent& seq, const std::string& path) {
    if (node.children.size() != premises.size())
      return fail(node, seq, path,
                  "rule needs " + std::to_string(premises.size()) +
                      " premise(s), proof has " + std::to_string(node.children.size()));
    for (std::size_t i = 0; i < premises.size(); ++i)
      if (!check_node(*node.children[i], premises[i],
                      path.empty() ? std::to_string(i) : path + "/" + std::to_string(i)))
        return false;
    return true;
  }

  static std::vector<FormulaPtr> without(const std::vector<FormulaPtr>& fs, int idx) {
    std::vector<FormulaPtr> out;
    for (int i = 0; i < static_cast<int>(fs.size()); ++i)
      if (i != idx) out.push_back(fs[i]);
    return out;
  }

  static std::vector<FormulaPtr> replaced(const std::vector<FormulaPtr>& fs, int idx,
                                          std::vector<FormulaPtr> repl) {
    std::vector<FormulaPtr> out;
    for (int i = 0; i < static_cast<int>(fs.size()); ++i) {
      if (i == idx)
        for (auto& r : repl) out.push_back(r);
      else
        out.push_back(fs[i]);
    }
    return out;
  }

};

// A Core-mode proof of |- A, dual(A), with A at index 0.  Fresh eigenvariable
// names are drawn against `sig`.
ProofNodePtr derive_init_rec(const FormulaPtr& a, Signature sig) {
  auto node = [](std::string rule, int principal,
                 std::vector<ProofNodePtr> children = {}) {
    auto* n = new ProofNode();
    n->rule = std::move(rule);
    n->principal = principal;
    n->children = std::move(children);
    return ProofNodePtr(n);
  };
  switch (a->conn) {
    case Conn::One: return node("bot", 1, {mk_proof("one")});
    case Conn::Bot: return node("bot", 0, {mk_proof("one")});
    case Conn::Zero: return node("top", 1);
    case Conn::Top: return node("top", 0);
    case Conn::Eq: case Conn::Neq: {
      int neq_at = a->conn == Conn::Eq ? 1 : 0;
      if (mgu(a->t1, a->t2))
        return node("neq", neq_at, {mk_proof("eq")});
      return node("neq", neq_at);
    }
    case Conn::Tensor: {
      // |- B*C, Bd|Cd:  par on 1 -> [B*C, Bd, Cd]; tensor on 0 with Bd left.
      auto* t = new ProofNode();
      t->rule = "tensor";
      t->principal = 0;
      t->split = {1};
      // Left premise [Bd, B], right premise [Cd, C].
      t->children = {derive_init_rec(dual(a->left), sig),
                     derive_init_rec(dual(a->right), sig)};
      return node("par", 1, {ProofNodePtr(t)});
    }
    case Conn::Par: {
      // |- B|C, Bd*Cd:  par on 0 -> [B, C, Bd*Cd]; tensor on 2 with B left.
      auto* t = new ProofNode();
      t->rule = "tensor";
      t->principal = 2;
      t->split = {0};
      // Left premise [B, Bd], right premise [C, Cd].
      t->children = {derive_init_rec(a->left, sig), derive_init_rec(a->right, sig)};
      return node("par", 0, {ProofNodePtr(t)});
    }
    case Conn::With: {
      auto* l = new ProofNode();
      l->rule = "oplus"; l->principal = 1; l->alt = 0;
      l->children = {derive_init_rec(a->left, sig)};
      auto* r = new ProofNode();
      r->rule = "oplus"; r->principal = 1; r->alt = 1;
      r->children = {derive_init_rec(a->right, sig)};
      return node("with", 0, {ProofNodePtr(l), ProofNodePtr(r)});
    }
    case Conn::Plus: {
      auto* l = new ProofNode();
      l->rule = "oplus"; l->principal = 0; l->alt = 0;
      l->children = {derive_init_rec(a->left, sig)};
      auto* r = new ProofNode();
      r->rule = "oplus"; r->principal = 0; r->alt = 1;
      r->children = {derive_init_rec(a->right, sig)};
      return node("with", 1, {ProofNodePtr(l), ProofNodePtr(r)});
    }
    case Conn::Forall: {
      // |- all x.B, ex x.Bd:  forall(0, y) -> [B y, ex x.Bd]; exists(1, y).
      std::string y = sig.fresh(a->binder_hint.empty() ? "y" : a->binder_hint);
      sig.add(y);
      TermPtr yt = mk_var(y);
      auto* ex = new ProofNode();
      ex->rule = "exists";
      ex->principal = 1;
      ex->witness = yt;
      ex->children = {derive_init_rec(instantiate_scope(a, yt), sig)};
      auto* fa = new ProofNode();
      fa->rule = "forall";
      fa->principal = 0;
      fa->var_name = y;
      fa->children = {ProofNodePtr(ex)};
      return ProofNodePtr(fa);
    }
    case Conn::Exists: {
      // |- ex x.B, all x.Bd:  forall(1, y) -> [ex x.B, Bd y]; exists(0, y).
      std::string y = sig.fresh(a->binder_hint.empty() ? "y" : a->binder_hint);
      sig.add(y);
      TermPtr yt = mk_var(y);
      auto* ex = new ProofNode();
      ex->rule = "exists";
      ex->principal = 0;
      ex->witness = yt;
      ex->children = {derive_init_rec(instantiate_scope(a, yt), sig)};
      auto* fa = new ProofNode();
      fa->rule = "forall";
      fa->principal = 1;
      fa->var_name = y;
      fa->children = {ProofNodePtr(ex)};
      return ProofNodePtr(fa);
    }
    case Conn::Mu: case Conn::Nu:
      return mk_proof("munu");
    case Conn::PredVar:
      throw FormulaError("derive_init: open predicate variable");
    case Conn::Bang: case Conn::Quest:
      throw FormulaError("derive_init: expand exponentials first");
  }
  throw FormulaError("derive_init: malformed formula");
}

}  // namespace

ProofNodePtr derive_init(const FormulaPtr& a, const Signature& sig) {
  return derive_init_rec(a, sig);
}

bool Checker::check_node(const ProofNode& node, const Sequent& seq,
                         const std::string& path) {
  const std::string& r = node.rule;
  const auto& fs = seq.formulas;
  int n = static_cast<int>(fs.size());
  auto principal_ok = [&]() {
    return node.principal >= 0 && node.principal < n;
  };
  auto principal = [&]() { return fs[node.principal]; };

  // ------------------------------------------------------------ macros
  if (r == "id") {
    if (n != 2) return fail(node, seq, path, "id needs a two-formula sequent");
    if (!formula_eq(fs[1], dual(fs[0])))
      return fail(node, seq, path, "id: formulas are not dual");
    if (!node.children.empty())
      return fail(node, seq, path, "id is a leaf");
    ProofNodePtr expanded;
    try {
      expanded = derive_init(fs[0], seq.sig);
    } catch (const std::exception& e) {
      return fail(node, seq, path, std::string("id: ") + e.what());
    }
    return check_node(*expanded, seq, path);
  }
  if (r == "cnn") {
    if (!principal_ok()) return fail(node, seq, path, "principal index out of range");
    if (node.children.size() != 3)
      return fail(node, seq, path, "cnn needs three premises");
    if (!node.invariant || !node.invariant2)
      return fail(node, seq, path, "cnn needs two invariants");
    auto* inner = new ProofNode();
    inner->rule = "nu";
    inner->principal = node.principal;
    inner->invariant = node.invariant2;
    inner->children = {node.children[0], node.children[1]};
    auto* outer = new ProofNode();
    outer->rule = "nu";
    outer->principal = n;  // the appended copy
    outer->invariant = node.invariant;
    outer->children = {ProofNodePtr(inner), node.children[2]};
    auto* con = new ProofNode();
    con->rule = "contract";
    con->principal = node.principal;
    con->children = {ProofNodePtr(outer)};
    return check_node(*con, seq, path);
  }
  if (r == "wq" || r == "cq" || r == "dq") {
    if (!principal_ok()) return fail(node, seq, path, "principal index out of range");
    if (node.children.size() != 1)
      return fail(node, seq, path, r + " needs one premise");
    int I = node.principal;
    auto at = [&](std::string rule, int idx, int alt,
                  std::vector<ProofNodePtr> kids) {
      auto* p = new ProofNode();
      p->rule = std::move(rule);
      p->principal = idx;
      p->alt = alt;
      p->children = std::move(kids);
      return ProofNodePtr(p);
    };
    ProofNodePtr inner;
    if (r == "wq")
      inner = at("oplus", I, 0, {at("bot", I, -1, {node.children[0]})});
    else if (r == "cq")
      inner = at("oplus", I, 1,
                 {at("oplus", I, 0, {at("par", I, -1, {node.children[0]})})});
    else
      inner = at("oplus", I, 1, {at("oplus", I, 1, {node.children[0]})});
    ProofNodePtr mu = at("mu", I, -1, {inner});
    return check_node(*mu, seq, path);
  }

  // ----------------------------------------------------------- kernel rules
  if (r == "one") {
    if (n != 1 || fs[0]->conn != Conn::One)
      return fail(node, seq, path, "one: sequent must be exactly |- 1");
    return check_children(node, {}, seq, path);
  }
  if (r == "top") {
    if (!principal_ok() || principal()->conn != Conn::Top)
      return fail(node, seq, path, "top: principal must be top");
    return check_children(node, {}, seq, path);
  }
  if (r == "eq") {
    if (n != 1 || fs[0]->conn != Conn::Eq)
      return fail(node, seq, path, "eq: sequent must be exactly |- t = t");
    if (!alpha_eq(fs[0]->t1, fs[0]->t2))
      return fail(node, seq, path, "eq: sides differ");
    return check_children(node, {}, seq, path);
  }
  if (r == "munu") {
    if (n != 2)
      return fail(node, seq, path, "munu: sequent must have exactly two formulas");
    const FormulaPtr* mu_f = nullptr;
    const FormulaPtr* nu_f = nullptr;
    for (auto& f : fs) {
      if (f->conn == Conn::Mu) mu_f = &f;
      if (f->conn == Conn::Nu) nu_f = &f;
    }
    if (!mu_f || !nu_f)
      return fail(node, seq, path, "munu: needs one mu and one nu formula");
    if (!body_eq((*nu_f)->body, dual((*mu_f)->body)))
      return fail(node, seq, path, "munu: bodies are not dual");
    if ((*mu_f)->args.size() != (*nu_f)->args.size())
      return fail(node, seq, path, "munu: argument lists differ");
    for (std::size_t i = 0; i < (*mu_f)->args.size(); ++i)
      if (!alpha_eq((*mu_f)->args[i], (*nu_f)->args[i]))
        return fail(node, seq, path, "munu: argument lists differ");
    return check_children(node, {}, seq, path);
  }
  if (r == "init") {
    if (!allows_unfold_init(rules.mode))
      return fail(node, seq, path, "init is not available in core mode");
    if (n != 2 || !formula_eq(fs[1], dual(fs[0])))
      return fail(node, seq, path, "init: sequent must be |- B, dual(B)");
    return check_children(node, {}, seq, path);
  }

  if (!principal_ok() && r != "cut")
    return fail(node, seq, path, "principal index out of range");

  if (r == "tensor") {
    if (principal()->conn != Conn::Tensor)
      return fail(node, seq, path, "tensor: principal must be a tensor");
    std::vector<bool> to_left(static_cast<std::size_t>(n), false);
    for (int i : node.split) {
      if (i < 0 || i >= n || i == node.principal || to_left[static_cast<std::size_t>(i)])
        return fail(node, seq, path, "tensor: bad context split");
      to_left[static_cast<std::size_t>(i)] = true;
    }
    Sequent left{seq.sig, {}}, right{seq.sig, {}};
    for (int i = 0; i < n; ++i) {
      if (i == node.principal) continue;
      (to_left[static_cast<std::size_t>(i)] ? left : right).formulas.push_back(fs[i]);
    }
    left.formulas.push_back(principal()->left);
    right.formulas.push_back(principal()->right);
    return check_children(node, {left, right}, seq, path);
  }
  if (r == "par") {
    if (principal()->conn != Conn::Par)
      return fail(node, seq, path, "par: principal must be a par");
    Sequent prem{seq.sig,
                 replaced(fs, node.principal, {principal()->left, principal()->right})};
    return check_children(node, {prem}, seq, path);
  }
  if (r == "bot") {
    if (principal()->conn != Conn::Bot)
      return fail(node, seq, path, "bot: principal must be bot");
    return check_children(node, {Sequent{seq.sig, without(fs, node.principal)}}, seq,
                          path);
  }
  if (r == "with") {
    if (principal()->conn != Conn::With)
      return fail(node, seq, path, "with: principal must be a with");
    Sequent l{seq.sig, replaced(fs, node.principal, {principal()->left})};
    Sequent rr{seq.sig, replaced(fs, node.principal, {principal()->right})};
    return check_children(node, {l, rr}, seq, path);
  }
  if (r == "oplus") {
    if (principal()->conn != Conn::Plus)
      return fail(node, seq, path, "oplus: principal must be an oplus");
    if (node.alt != 0 && node.alt != 1)
      return fail(node, seq, path, "oplus: branch must be 0 or 1");
    FormulaPtr pick = node.alt == 0 ? principal()->left : principal()->right;
    return check_children(node, {Sequent{seq.sig, replaced(fs, node.principal, {pick})}},
                          seq, path);
  }
  if (r == "neq") {
    if (principal()->conn != Conn::Neq)
      return fail(node, seq, path, "neq: principal must be an inequality");
    auto theta = mgu(principal()->t1, principal()->t2);
    if (!theta) return check_children(node, {}, seq, path);
    Sequent prem;
    prem.sig = signature_update(seq.sig, *theta);
    for (int i = 0; i < n; ++i)
      if (i != node.principal)
        prem.formulas.push_back(normalize_terms(apply_subst(fs[i], *theta)));
    return check_children(node, {prem}, seq, path);
  }
  if (r == "exists") {
    if (principal()->conn != Conn::Exists)
      return fail(node, seq, path, "exists: principal must be an exists");
    if (!node.witness) return fail(node, seq, path, "exists: missing witness");
    for (auto& v : free_vars(node.witness))
      if (!seq.sig.contains(v))
        return fail(node, seq, path, "exists: witness variable '" + v +
                                         "' is not in the signature");
    FormulaPtr inst;
    try {
      inst = instantiate_scope(principal(), node.witness);
    } catch (const std::exception& e) {
      return fail(node, seq, path, std::string("exists: ") + e.what());
    }
    return check_children(node, {Sequent{seq.sig, replaced(fs, node.principal, {inst})}},
                          seq, path);
  }
  if (r == "forall") {
    if (principal()->conn != Conn::Forall)
      return fail(node, seq, path, "forall: principal must be a forall");
    if (node.var_name.empty())
      return fail(node, seq, path, "forall: missing eigenvariable name");
    if (seq.sig.contains(node.var_name))
      return fail(node, seq, path, "forall: eigenvariable '" + node.var_name +
                                       "' is not fresh");
    Sequent prem;
    prem.sig = seq.sig;
    prem.sig.add(node.var_name);
    prem.formulas = replaced(fs, node.principal,
                             {instantiate_scope(principal(), mk_var(node.var_name))});
    return check_children(node, {prem}, seq, path);
  }
  if (r == "mu") {
    if (principal()->conn != Conn::Mu)
      return fail(node, seq, path, "mu: principal must be a least fixed point");
    return check_children(
        node, {Sequent{seq.sig, replaced(fs, node.principal, {unfold_fix(principal())})}},
        seq, path);
  }
  if (r == "unfold") {
    if (!allows_unfold_init(rules.mode))
      return fail(node, seq, path, "unfold is not available in core mode");
    if (principal()->conn != Conn::Nu)
      return fail(node, seq, path, "unfold: principal must be a greatest fixed point");
    return check_children(
        node, {Sequent{seq.sig, replaced(fs, node.principal, {unfold_fix(principal())})}},
        seq, path);
  }
  if (r == "nu") {
    if (principal()->conn != Conn::Nu)
      return fail(node, seq, path, "nu: principal must be a greatest fixed point");
    if (!node.invariant) return fail(node, seq, path, "nu: missing invariant");
    PredAbsPtr S = node.invariant;
    {
      FormulaPtr sform = S->form;
      if (contains_exponential(sform)) {
        if (!rules.expand_exponentials)
          return fail(node, seq, path, "nu: invariant contains an unexpanded exponential");
        S = expand_exponentials(S);
      }
    }
    const FormulaPtr& p = principal();
    if (S->arity != p->body->arity)
      return fail(node, seq, path, "nu: invariant arity mismatch");
    if (rules.sigma1_invariants) {
      HierarchyClass c = classify(S->form);
      if (!(c.side == Polarity::Pos && c.level == 1))
        return fail(node, seq, path,
                    "nu: invariant is " + hierarchy_to_string(c) +
                        ", sigma1 restriction requires P1");
    }
    Sequent prem1{seq.sig, replaced(fs, node.principal, {apply_pred_abs(S, p->args)})};
    // Second premise: |- B S xs, dual(S xs) with fresh eigenvariables.
    Sequent prem2;
    prem2.sig = seq.sig;
    std::vector<TermPtr> xs;
    for (int k = 0; k < S->arity; ++k) {
      std::string hint = k < static_cast<int>(p->body->hints.size())
                             ? p->body->hints[k] : "x";
      std::string x = prem2.sig.fresh(hint);
      prem2.sig.add(x);
      xs.push_back(mk_var(x));
    }
    FormulaPtr bs = instantiate_body(p->body, PredTarget::invariant(S), xs);
    FormulaPtr sx = apply_pred_abs(S, xs);
    prem2.formulas = {bs, dual(sx)};
    return check_children(node, {prem1, prem2}, seq, path);
  }
  if (r == "cut") {
    if (!allows_cut(rules.mode))
      return fail(node, seq, path, "cut is not available in this mode");
    if (!node.cut_formula) return fail(node, seq, path, "cut: missing cut formula");
    FormulaPtr B = normalize_terms(node.cut_formula);
    if (contains_exponential(B)) {
      if (!rules.expand_exponentials)
        return fail(node, seq, path, "cut: formula contains an unexpanded exponential");
      B = expand_exponentials(B);
    }
    for (auto& v : free_vars(B))
      if (!seq.sig.contains(v))
        return fail(node, seq, path,
                    "cut: formula variable '" + v + "' is not in the signature");
    std::vector<bool> to_left(static_cast<std::size_t>(n), false);
    for (int i : node.split) {
      if (i < 0 || i >= n || to_left[static_cast<std::size_t>(i)])
        return fail(node, seq, path, "cut: bad context split");
      to_left[static_cast<std::size_t>(i)] = true;
    }
    Sequent left{seq.sig, {}}, right{seq.sig, {}};
    for (int i = 0; i < n; ++i)
      (to_left[static_cast<std::size_t>(i)] ? left : right).formulas.push_back(fs[i]);
    left.formulas.push_back(B);
    right.formulas.push_back(dual(B));
    return check_children(node, {left, right}, seq, path);
  }
  if (r == "contract") {
    if (!allows_structural(rules.mode))
      return fail(node, seq, path, "contraction requires mulk or mulk+");
    Sequent prem{seq.sig, fs};
    prem.formulas.push_back(principal());
    return check_children(node, {prem}, seq, path);
  }
  if (r == "weaken") {
    if (!allows_structural(rules.mode))
      return fail(node, seq, path, "weakening requires mulk or mulk+");
    return check_children(node, {Sequent{seq.sig, without(fs, node.principal)}}, seq,
                          path);
  }
  return fail(node, seq, path, "unknown rule '" + r + "'");
}

CheckReport check(const ProofNode& proof, const Sequent& goal, const RuleSet& rules) {
  Checker C;
  C.rules = rules;
  if (rules.sigma1_invariants && !allows_structural(rules.mode)) {
    C.report.ok = false;
    C.report.message = "sigma1 restriction is only meaningful in mulk or mulk+";
    return C.report;
  }
  Sequent g;
  g.sig = goal.sig;
  for (auto& f : goal.formulas) {
    FormulaPtr nf = normalize_terms(f);
    if (contains_exponential(nf)) {
      if (!rules.expand_exponentials) {
        C.report.ok = false;
        C.report.path = ".";
        C.report.message = "goal contains an unexpanded exponential";
        C.report.sequent = sequent_to_string(goal);
        return C.report;
      }
      nf = expand_exponentials(nf);
    }
    g.formulas.push_back(nf);
  }
  for (auto& f : g.formulas)
    for (auto& v : free_vars(f))
      if (!g.sig.contains(v)) {
        C.report.ok = false;
        C.report.path = ".";
        C.report.message = "free variable '" + v + "' of the goal is not in the signature";
        C.report.sequent = sequent_to_string(g);
        return C.report;
      }
  C.check_node(proof, g, "");
  return C.report;
}

}  // namespace mumall
