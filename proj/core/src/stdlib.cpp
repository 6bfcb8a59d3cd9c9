#include "mumall/stdlib.hpp"

namespace mumall {

namespace {

const char* kStdSource = R"(
# Relational arithmetic as least fixed points.
define nat := mu (N x => x = 0 + ex x'. x = s x' * N x')

define plus := mu (P x y u =>
  (x = 0 * y = u) +
  ex x'. ex u'. x = s x' * u = s u' * P x' y u')

define mult := mu (M x y w =>
  (x = 0 * w = 0) +
  ex x'. ex u'. x = s x' * M x' y u' * plus y u' w)

define ack := mu (A m n a =>
  (m = 0 * a = s n) +
  (ex p. m = s p * n = 0 * A p 1 a) +
  ex p. ex q. ex b. m = s p * n = s q * A m q b * A p b a)

# The singleton relation {0}, whose search space is infinite on the right.
define singleton := mu (R x => x = 0 + R (s x))

# Unpolarized twins, used by the Peano axioms.
udefine unat := mu (N x => x = 0 \/ ex x'. x = s x' /\ N x')

udefine uplus := mu (P x y u =>
  (x = 0 /\ y = u) \/
  ex x'. ex u'. x = s x' /\ u = s u' /\ P x' y u')

udefine umult := mu (M x y w =>
  (x = 0 /\ w = 0) \/
  ex x'. ex u'. x = s x' /\ M x' y u' /\ uplus y u' w)
)";

}  // namespace

const SourceFile& standard_definitions() {
  static const SourceFile file = parse_file(kStdSource, "<stdlib>");
  return file;
}

BodyPtr std_body(const std::string& name) {
  const Definition* d = standard_definitions().find_definition(name);
  if (!d || !d->is_pred)
    throw FormulaError("stdlib: no predicate named '" + name + "'");
  return d->body;
}

std::vector<NamedBody> definitions() {
  std::vector<NamedBody> out;
  for (auto& d : standard_definitions().definitions)
    if (d.is_pred) out.push_back({d.name, d.fix_conn, d.body});
  // The generic ?-encoding body, with the hole left as a free predicate
  // variable named P (index 1, i.e. not bound by the body's own binder).
  out.push_back({"quest-body", Conn::Mu, quest_body(mk_predvar(0, "P", {}))});
  return out;
}

ProofNodePtr derived_structural(StructRule rule, int principal,
                                ProofNodePtr premise) {
  auto at = [](std::string r, int idx, int alt, std::vector<ProofNodePtr> kids) {
    auto* p = new ProofNode();
    p->rule = std::move(r);
    p->principal = idx;
    p->alt = alt;
    p->children = std::move(kids);
    return ProofNodePtr(p);
  };
  int I = principal;
  ProofNodePtr inner;
  switch (rule) {
    case StructRule::W:
      inner = at("oplus", I, 0, {at("bot", I, -1, {std::move(premise)})});
      break;
    case StructRule::C:
      inner = at("oplus", I, 1,
                 {at("oplus", I, 0, {at("par", I, -1, {std::move(premise)})})});
      break;
    case StructRule::D:
      inner = at("oplus", I, 1, {at("oplus", I, 1, {std::move(premise)})});
      break;
  }
  return at("mu", I, -1, {std::move(inner)});
}

std::vector<PeanoAxiom> peano_axioms() {
  const SourceFile& env = standard_definitions();
  auto ax = [&](const std::string& name, const std::string& text) {
    return PeanoAxiom{name, parse_uformula(text, env)};
  };
  std::vector<PeanoAxiom> out;
  out.push_back(ax("succ-not-zero", "all^ x. s x != 0"));
  out.push_back(ax("succ-injective", "all^ x. all^ y. (s x = s y -> x = y)"));
  out.push_back(ax("plus-zero", "all^ x. ex u. uplus x 0 u /\\ u = x"));
  out.push_back(ax("plus-succ",
                   "all^ x. all^ y. ex u. uplus x (s y) u /\\ "
                   "ex v. uplus x y v /\\ u = s v"));
  out.push_back(ax("mult-zero", "all^ x. ex u. umult x 0 u /\\ u = 0"));
  out.push_back(ax("mult-succ",
                   "all^ x. all^ y. ex u. umult x (s y) u /\\ "
                   "ex v. umult x y v /\\ ex w. uplus v x w /\\ u = w"));
  // Induction scheme instantiated with A := unat.
  out.push_back(ax("induction-nat",
                   "(unat 0 /\\ all^ x. (unat x -> unat (s x))) -> all^ x. unat x"));
  return out;
}

}  // namespace mumall
