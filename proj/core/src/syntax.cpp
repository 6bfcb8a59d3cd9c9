#include "mumall/syntax.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace mumall {

namespace {

// ---------------------------------------------------------------- lexing

struct Token {
  enum class Kind { Ident, Int, Sym, End };
  Kind kind;
  std::string text;
  long value = 0;
  int line = 1, col = 1;
};

const char* kUnicodeAliases[][2] = {
    {"µ", "mu"},   {"μ", "mu"},   {"ν", "nu"},
    {"∀", "all"},  {"∃", "ex"},   {"⊤", "top"},
    {"⊥", "bot"},
};
const char* kUnicodeSyms[][2] = {
    {"⊗", "*"},  {"⅋", "|"},  {"⊕", "+"},  {"≠", "!="},
    {"⊸", "-o"}, {"∧", "/\\"}, {"∨", "\\/"},
};

bool ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool ident_char(char c) {
  return ident_start(c) || (c >= '0' && c <= '9') || c == '\'';
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') { ++line; col = 1; } else ++col;
    }
    i += n;
  };
  auto push = [&](Token::Kind k, std::string s, long v = 0) {
    out.push_back({k, std::move(s), v, line, col});
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') { advance(1); continue; }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    bool matched = false;
    for (auto& [utf8, alias] : kUnicodeAliases) {
      std::size_t n = std::string(utf8).size();
      if (text.compare(i, n, utf8) == 0) {
        push(Token::Kind::Ident, alias);
        advance(n);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    for (auto& [utf8, alias] : kUnicodeSyms) {
      std::size_t n = std::string(utf8).size();
      if (text.compare(i, n, utf8) == 0) {
        push(Token::Kind::Sym, alias);
        advance(n);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      push(Token::Kind::Ident, text.substr(i, j - i));
      advance(j - i);
      continue;
    }
    if (c >= '0' && c <= '9') {
      std::size_t j = i;
      while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
      std::string digits = text.substr(i, j - i);
      push(Token::Kind::Int, digits, std::stol(digits));
      advance(j - i);
      continue;
    }
    auto two = text.substr(i, 2);
    static const std::set<std::string> kTwo = {":=", "=>", "!=", "/=", "-o",
                                               "->", "/\\", "\\/"};
    if (kTwo.count(two)) {
      push(Token::Kind::Sym, two == "/=" ? "!=" : two);
      advance(2);
      continue;
    }
    static const std::string kOne = "(){}[];,.:=*&|+!?^";
    if (kOne.find(c) != std::string::npos) {
      push(Token::Kind::Sym, std::string(1, c));
      advance(1);
      continue;
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", line, col);
  }
  out.push_back({Token::Kind::End, "", 0, line, col});
  return out;
}

const std::set<std::string> kKeywords = {
    "all", "ex", "mu", "nu", "top", "bot", "tt", "ff",
    "constructor", "define", "udefine", "theorem", "proof", "query",
    "compute", "iota"};

// ---------------------------------------------------------------- parsing

struct Parser {
  std::vector<Token> toks;
  std::size_t pos = 0;
  const SourceFile* env = nullptr;
  // Innermost binder last.
  std::vector<std::string> term_scope;
  std::vector<std::pair<std::string, int>> pred_scope;  // name, arity

  const Token& peek(int ahead = 0) const {
    std::size_t k = pos + ahead;
    return k < toks.size() ? toks[k] : toks.back();
  }
  const Token& next() { return toks[std::min(pos++, toks.size() - 1)]; }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string at = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + " at " + at, t.line, t.col);
  }
  bool at_sym(const std::string& s) const {
    return peek().kind == Token::Kind::Sym && peek().text == s;
  }
  bool at_ident(const std::string& s) const {
    return peek().kind == Token::Kind::Ident && peek().text == s;
  }
  bool eat_sym(const std::string& s) {
    if (!at_sym(s)) return false;
    ++pos;
    return true;
  }
  void expect_sym(const std::string& s) {
    if (!eat_sym(s)) fail("expected '" + s + "'");
  }
  std::string expect_ident() {
    if (peek().kind != Token::Kind::Ident) fail("expected identifier");
    return next().text;
  }
  std::string expect_name() {
    std::string n = expect_ident();
    if (kKeywords.count(n))
      fail("'" + n + "' is reserved");
    return n;
  }

  bool is_ctor(const std::string& name) const {
    if (name == "z" || name == "s") return true;
    return env && env->ctors.contains(name);
  }

  // ------------------------------------------------------------- terms

  bool starts_term_atom() const {
    const Token& t = peek();
    if (t.kind == Token::Kind::Int) return true;
    if (t.kind == Token::Kind::Sym) return t.text == "(";
    if (t.kind == Token::Kind::Ident) return !kKeywords.count(t.text);
    return false;
  }

  TermPtr term_atom() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Int) {
      next();
      return numeral(t.value);
    }
    if (at_sym("(")) {
      next();
      TermPtr inner = term_spine();
      expect_sym(")");
      return inner;
    }
    std::string name = expect_name();
    return resolve_term_name(name);
  }

  TermPtr resolve_term_name(const std::string& name) {
    for (int k = static_cast<int>(term_scope.size()) - 1; k >= 0; --k)
      if (term_scope[k] == name)
        return mk_bound(static_cast<int>(term_scope.size()) - 1 - k, name);
    if (is_ctor(name)) return mk_ctor(name);
    return mk_var(name);
  }

  TermPtr term_spine() {
    TermPtr head = term_atom();
    while (starts_term_atom()) head = mk_app(head, term_atom());
    return head;
  }

  // --------------------------------------------------- polarized formulas

  FormulaPtr formula() {  // lowest precedence: -o
    FormulaPtr lhs = formula_quant();
    if (eat_sym("-o")) return mk_binary(Conn::Par, dual(lhs), formula());
    return lhs;
  }

  FormulaPtr formula_quant() {
    if (at_ident("all") || at_ident("ex")) {
      bool is_all = next().text == "all";
      if (at_sym("^")) fail("hatted quantifier in polarized formula");
      std::string x = binder_name();
      expect_sym(".");
      term_scope.push_back(x);
      FormulaPtr scope = formula_quant();
      term_scope.pop_back();
      return mk_quant(is_all ? Conn::Forall : Conn::Exists, x, scope);
    }
    return formula_or();
  }

  FormulaPtr formula_or() {
    FormulaPtr lhs = formula_and();
    if (at_sym("|") || at_sym("+")) {
      Conn c = next().text == "|" ? Conn::Par : Conn::Plus;
      return mk_binary(c, lhs, formula_or_operand());
    }
    return lhs;
  }
  FormulaPtr formula_or_operand() {
    if (at_ident("all") || at_ident("ex")) return formula_quant();
    return formula_or();
  }

  FormulaPtr formula_and() {
    FormulaPtr lhs = formula_prefix();
    if (at_sym("*") || at_sym("&")) {
      Conn c = next().text == "*" ? Conn::Tensor : Conn::With;
      return mk_binary(c, lhs, formula_and_operand());
    }
    return lhs;
  }
  FormulaPtr formula_and_operand() {
    if (at_ident("all") || at_ident("ex")) return formula_quant();
    return formula_and();
  }

  FormulaPtr formula_prefix() {
    if (eat_sym("!")) return mk_exp(Conn::Bang, formula_prefix_operand());
    if (eat_sym("?")) return mk_exp(Conn::Quest, formula_prefix_operand());
    return formula_atom();
  }
  FormulaPtr formula_prefix_operand() {
    if (at_ident("all") || at_ident("ex")) return formula_quant();
    return formula_prefix();
  }

  std::string binder_name() {
    std::string n = expect_name();
    if (is_ctor(n)) fail("binder shadows constructor '" + n + "'");
    if (env && env->find_definition(n)) fail("binder shadows definition '" + n + "'");
    return n;
  }

  FormulaPtr formula_atom() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Int && (t.value == 0 || t.value == 1)) {
      // Unit unless it starts an equation.
      const Token& after = peek(1);
      bool eq_follows = after.kind == Token::Kind::Sym &&
                        (after.text == "=" || after.text == "!=");
      if (!eq_follows) {
        next();
        return mk_unit(t.value == 1 ? Conn::One : Conn::Zero);
      }
    }
    if (at_ident("top")) { next(); return mk_unit(Conn::Top); }
    if (at_ident("bot")) { next(); return mk_unit(Conn::Bot); }
    if (at_ident("tt") || at_ident("ff")) fail("unpolarized unit in polarized formula");
    if (at_ident("mu") || at_ident("nu")) {
      bool is_mu = next().text == "mu";
      BodyPtr b = parse_body();
      std::vector<TermPtr> args;
      for (int k = 0; k < b->arity; ++k) args.push_back(term_atom());
      return mk_fix(is_mu ? Conn::Mu : Conn::Nu, b, std::move(args));
    }
    if (peek().kind == Token::Kind::Ident && !kKeywords.count(peek().text)) {
      const std::string& name = peek().text;
      for (int k = static_cast<int>(pred_scope.size()) - 1; k >= 0; --k) {
        if (pred_scope[k].first == name) {
          next();
          int idx = static_cast<int>(pred_scope.size()) - 1 - k;
          std::vector<TermPtr> args;
          for (int a = 0; a < pred_scope[k].second; ++a) args.push_back(term_atom());
          return mk_predvar(idx, name, std::move(args));
        }
      }
      if (const Definition* d = env ? env->find_definition(name) : nullptr) {
        next();
        if (!d->is_pred) return d->alias;
        std::vector<TermPtr> args;
        for (int a = 0; a < d->body->arity; ++a) args.push_back(term_atom());
        return mk_fix(d->fix_conn, d->body, std::move(args));
      }
    }
    // Equation (or parenthesized formula).
    if (at_sym("(")) {
      std::size_t save = pos;
      try {
        TermPtr lhs = term_atom();  // consumes the parenthesized term
        if (at_sym("=") || at_sym("!=")) {
          bool eq = next().text == "=";
          TermPtr rhs = term_spine();
          return eq ? mk_eq(lhs, rhs) : mk_neq(lhs, rhs);
        }
      } catch (const ParseError&) {
      }
      pos = save;
      next();  // '('
      FormulaPtr inner = formula();
      expect_sym(")");
      return inner;
    }
    if (starts_term_atom()) {
      TermPtr lhs = term_spine();
      if (at_sym("=") || at_sym("!=")) {
        bool eq = next().text == "=";
        return eq ? mk_eq(lhs, term_spine()) : mk_neq(lhs, term_spine());
      }
      fail("expected '=' or '!=' after term");
    }
    fail("expected formula");
  }

  // mu/nu body: (p x1 .. xn => F).  The body is closed: only its own binders
  // are visible inside.
  BodyPtr parse_body() {
    expect_sym("(");
    std::string p = expect_name();
    std::vector<std::string> xs;
    while (peek().kind == Token::Kind::Ident && !at_sym("=>")) xs.push_back(binder_name());
    expect_sym("=>");
    auto saved_terms = std::move(term_scope);
    auto saved_preds = std::move(pred_scope);
    term_scope = xs;
    pred_scope = {{p, static_cast<int>(xs.size())}};
    FormulaPtr form = formula();
    term_scope = std::move(saved_terms);
    pred_scope = std::move(saved_preds);
    expect_sym(")");
    auto* b = new Body();
    b->arity = static_cast<int>(xs.size());
    b->form = form;
    b->pred_hint = p;
    b->hints = xs;
    return BodyPtr(b);
  }

  // Invariant abstraction: (x1 .. xn => F), also closed at binder level but
  // free named variables (eigenvariables) are allowed.
  PredAbsPtr parse_pred_abs() {
    expect_sym("(");
    std::vector<std::string> xs;
    while (peek().kind == Token::Kind::Ident && !at_sym("=>")) xs.push_back(binder_name());
    expect_sym("=>");
    auto saved_terms = std::move(term_scope);
    auto saved_preds = std::move(pred_scope);
    term_scope = xs;
    pred_scope = {};
    FormulaPtr form = formula();
    term_scope = std::move(saved_terms);
    pred_scope = std::move(saved_preds);
    expect_sym(")");
    auto* s = new PredAbs();
    s->arity = static_cast<int>(xs.size());
    s->form = form;
    s->hints = xs;
    return PredAbsPtr(s);
  }

  // -------------------------------------------------- unpolarized formulas

  std::vector<std::pair<std::string, int>> upred_scope;

  UFormulaPtr uformula() {  // lowest precedence: ->
    UFormulaPtr lhs = uformula_quant();
    if (eat_sym("->")) return umk_binary(UConn::Or, udual(lhs), uformula());
    return lhs;
  }

  UFormulaPtr uformula_quant() {
    if (at_ident("all") || at_ident("ex")) {
      bool is_all = next().text == "all";
      bool hatted = eat_sym("^");
      std::string x = binder_name();
      expect_sym(".");
      term_scope.push_back(x);
      UFormulaPtr scope = uformula_quant();
      term_scope.pop_back();
      UConn c = is_all ? (hatted ? UConn::HForall : UConn::Forall)
                       : (hatted ? UConn::HExists : UConn::Exists);
      return umk_quant(c, x, scope);
    }
    return uformula_or();
  }

  UFormulaPtr uformula_or() {
    UFormulaPtr lhs = uformula_and();
    if (eat_sym("\\/")) return umk_binary(UConn::Or, lhs, uformula_or_operand());
    return lhs;
  }
  UFormulaPtr uformula_or_operand() {
    if (at_ident("all") || at_ident("ex")) return uformula_quant();
    return uformula_or();
  }

  UFormulaPtr uformula_and() {
    UFormulaPtr lhs = uformula_atom_level();
    if (eat_sym("/\\")) return umk_binary(UConn::And, lhs, uformula_and_operand());
    return lhs;
  }
  UFormulaPtr uformula_and_operand() {
    if (at_ident("all") || at_ident("ex")) return uformula_quant();
    return uformula_and();
  }

  UFormulaPtr uformula_atom_level() {
    if (at_ident("tt")) { next(); return umk_unit(UConn::Tt); }
    if (at_ident("ff")) { next(); return umk_unit(UConn::Ff); }
    if (at_ident("mu") || at_ident("nu")) {
      bool is_mu = next().text == "mu";
      UBodyPtr b = parse_ubody();
      std::vector<TermPtr> args;
      for (int k = 0; k < b->arity; ++k) args.push_back(term_atom());
      return umk_fix(is_mu ? UConn::Mu : UConn::Nu, b, std::move(args));
    }
    if (peek().kind == Token::Kind::Ident && !kKeywords.count(peek().text)) {
      const std::string& name = peek().text;
      for (int k = static_cast<int>(upred_scope.size()) - 1; k >= 0; --k) {
        if (upred_scope[k].first == name) {
          next();
          int idx = static_cast<int>(upred_scope.size()) - 1 - k;
          std::vector<TermPtr> args;
          for (int a = 0; a < upred_scope[k].second; ++a) args.push_back(term_atom());
          return umk_predvar(idx, name, std::move(args));
        }
      }
      if (const UDefinition* d = env ? env->find_udefinition(name) : nullptr) {
        next();
        if (!d->is_pred) return d->alias;
        std::vector<TermPtr> args;
        for (int a = 0; a < d->body->arity; ++a) args.push_back(term_atom());
        return umk_fix(d->fix_conn, d->body, std::move(args));
      }
    }
    if (at_sym("(")) {
      std::size_t save = pos;
      try {
        TermPtr lhs = term_atom();
        if (at_sym("=") || at_sym("!=")) {
          bool eq = next().text == "=";
          TermPtr rhs = term_spine();
          return eq ? umk_eq(lhs, rhs) : umk_neq(lhs, rhs);
        }
      } catch (const ParseError&) {
      }
      pos = save;
      next();
      UFormulaPtr inner = uformula();
      expect_sym(")");
      return inner;
    }
    if (starts_term_atom()) {
      TermPtr lhs = term_spine();
      if (at_sym("=") || at_sym("!=")) {
        bool eq = next().text == "=";
        return eq ? umk_eq(lhs, term_spine()) : umk_neq(lhs, term_spine());
      }
      fail("expected '=' or '!=' after term");
    }
    fail("expected formula");
  }

  UBodyPtr parse_ubody() {
    expect_sym("(");
    std::string p = expect_name();
    std::vector<std::string> xs;
    while (peek().kind == Token::Kind::Ident && !at_sym("=>")) xs.push_back(binder_name());
    expect_sym("=>");
    auto saved_terms = std::move(term_scope);
    auto saved_preds = std::move(upred_scope);
    term_scope = xs;
    upred_scope = {{p, static_cast<int>(xs.size())}};
    UFormulaPtr form = uformula();
    term_scope = std::move(saved_terms);
    upred_scope = std::move(saved_preds);
    expect_sym(")");
    auto* b = new UBody();
    b->arity = static_cast<int>(xs.size());
    b->form = form;
    b->pred_hint = p;
    b->hints = xs;
    return UBodyPtr(b);
  }

  // ------------------------------------------------------- proof scripts

  ProofNodePtr parse_proof() {
    std::string rule = expect_ident();
    auto* node = new ProofNode();
    node->rule = rule;
    if (rule == "tensor" || rule == "cut") {
      expect_sym("(");
      if (rule == "tensor") {
        node->principal = expect_int();
      } else {
        node->cut_formula = formula();
      }
      expect_sym(",");
      expect_sym("[");
      if (!at_sym("]")) {
        node->split.push_back(expect_int());
        while (eat_sym(",")) node->split.push_back(expect_int());
      }
      expect_sym("]");
      expect_sym(")");
    } else if (rule == "oplus") {
      expect_sym("(");
      node->principal = expect_int();
      expect_sym(",");
      node->alt = expect_int();
      expect_sym(")");
    } else if (rule == "exists") {
      expect_sym("(");
      node->principal = expect_int();
      expect_sym(",");
      node->witness = term_spine();
      expect_sym(")");
    } else if (rule == "forall") {
      expect_sym("(");
      node->principal = expect_int();
      expect_sym(",");
      node->var_name = expect_name();
      expect_sym(")");
    } else if (rule == "nu") {
      expect_sym("(");
      node->principal = expect_int();
      expect_sym(",");
      node->invariant = parse_pred_abs();
      expect_sym(")");
    } else if (rule == "cnn") {
      expect_sym("(");
      node->principal = expect_int();
      expect_sym(",");
      node->invariant = parse_pred_abs();
      expect_sym(",");
      node->invariant2 = parse_pred_abs();
      expect_sym(")");
    } else if (rule == "par" || rule == "bot" || rule == "with" || rule == "top" ||
               rule == "neq" || rule == "mu" || rule == "unfold" ||
               rule == "contract" || rule == "weaken" || rule == "wq" ||
               rule == "cq" || rule == "dq") {
      expect_sym("(");
      node->principal = expect_int();
      expect_sym(")");
    } else if (rule == "one" || rule == "eq" || rule == "munu" || rule == "init" ||
               rule == "id") {
      // leaf rules, no annotation
    } else {
      fail("unknown rule '" + rule + "'");
    }
    if (eat_sym("{")) {
      if (!at_sym("}")) {
        node->children.push_back(parse_proof());
        while (eat_sym(";")) node->children.push_back(parse_proof());
      }
      expect_sym("}");
    }
    return ProofNodePtr(node);
  }

  int expect_int() {
    if (peek().kind != Token::Kind::Int) fail("expected integer");
    return static_cast<int>(next().value);
  }

  // ---------------------------------------------------------- declarations

  void parse_decl(SourceFile& file) {
    std::string kw = expect_ident();
    if (kw == "constructor") {
      std::string name = expect_name();
      expect_sym(":");
      int arity = 0;
      for (;;) {
        if (!at_ident("iota")) fail("expected 'iota'");
        next();
        if (eat_sym("->")) { ++arity; continue; }
        break;
      }
      file.ctors.declare(name, arity);
      return;
    }
    if (kw == "define") {
      std::string name = decl_name(file);
      expect_sym(":=");
      Definition d;
      d.name = name;
      if ((at_ident("mu") || at_ident("nu")) && peek(1).kind == Token::Kind::Sym &&
          peek(1).text == "(") {
        bool is_mu = at_ident("mu");
        std::size_t save = pos;
        next();
        BodyPtr b = parse_body();
        if (b->arity > 0 && !starts_term_atom()) {
          d.is_pred = true;
          d.fix_conn = is_mu ? Conn::Mu : Conn::Nu;
          d.body = b;
          file.definitions.push_back(std::move(d));
          return;
        }
        pos = save;
      }
      d.is_pred = false;
      d.alias = formula();
      file.definitions.push_back(std::move(d));
      return;
    }
    if (kw == "udefine") {
      std::string name = decl_name(file);
      expect_sym(":=");
      UDefinition d;
      d.name = name;
      if ((at_ident("mu") || at_ident("nu")) && peek(1).kind == Token::Kind::Sym &&
          peek(1).text == "(") {
        bool is_mu = at_ident("mu");
        std::size_t save = pos;
        next();
        UBodyPtr b = parse_ubody();
        if (b->arity > 0 && !starts_term_atom()) {
          d.is_pred = true;
          d.fix_conn = is_mu ? UConn::Mu : UConn::Nu;
          d.body = b;
          file.udefinitions.push_back(std::move(d));
          return;
        }
        pos = save;
      }
      d.alias = uformula();
      file.udefinitions.push_back(std::move(d));
      return;
    }
    if (kw == "theorem") {
      std::string name = decl_name(file);
      expect_sym(":");
      file.theorems.push_back({name, formula()});
      return;
    }
    if (kw == "proof") {
      std::string name = expect_name();
      if (!file.find_theorem(name)) fail("proof of unknown theorem '" + name + "'");
      ProofDecl p;
      p.name = name;
      if (at_ident("core") || at_ident("mulk")) {
        std::string m = next().text;
        if (eat_sym("+")) m += "+";
        p.rules.mode = mode_from_string(m);
      }
      if (at_ident("sigma1")) {
        next();
        p.rules.sigma1_invariants = true;
      }
      if (p.rules.sigma1_invariants &&
          (p.rules.mode == Mode::Core || p.rules.mode == Mode::CorePlusAdmissible))
        fail("sigma1 requires mulk or mulk+");
      expect_sym("{");
      p.tree = parse_proof();
      expect_sym("}");
      file.proofs.push_back(std::move(p));
      return;
    }
    if (kw == "query") {
      std::string name = decl_name(file);
      expect_sym(":=");
      if (!at_ident("compute")) fail("expected 'compute'");
      next();
      expect_sym("(");
      QueryDecl q;
      q.name = name;
      q.pred = expect_name();
      const Definition* d = file.find_definition(q.pred);
      if (!d || !d->is_pred) fail("'" + q.pred + "' is not a defined predicate");
      while (eat_sym(",")) q.args.push_back(term_spine());
      expect_sym(")");
      if (static_cast<int>(q.args.size()) + 1 != d->body->arity)
        fail("query needs " + std::to_string(d->body->arity - 1) +
             " argument(s) for '" + q.pred + "'");
      file.queries.push_back(std::move(q));
      return;
    }
    fail("expected declaration");
  }

  std::string decl_name(const SourceFile& file) {
    std::string name = expect_name();
    if (file.find_definition(name) || file.find_udefinition(name) ||
        file.find_theorem(name) || file.find_query(name))
      fail("duplicate name '" + name + "'");
    if (is_ctor(name)) fail("name '" + name + "' is a constructor");
    return name;
  }
};

}  // namespace

namespace {

void check_term_arities_impl(const TermPtr& t, const ConstructorTable& ctors) {
  std::vector<TermPtr> args;
  TermPtr head = t;
  while (head->kind == Term::Kind::App) {
    args.push_back(head->arg);
    head = head->fn;
  }
  if (head->kind == Term::Kind::Ctor) {
    int want = ctors.arity(head->name);
    if (static_cast<int>(args.size()) != want)
      throw ParseError("constructor '" + head->name + "' expects " +
                           std::to_string(want) + " argument(s), got " +
                           std::to_string(args.size()),
                       0, 0);
  } else if (!args.empty()) {
    throw ParseError("variable '" + head->name + "' applied to arguments", 0, 0);
  }
  for (auto& a : args) check_term_arities_impl(a, ctors);
}

void check_formula_arities_impl(const FormulaPtr& f, const ConstructorTable& ctors) {
  if (f->t1) check_term_arities_impl(f->t1, ctors);
  if (f->t2) check_term_arities_impl(f->t2, ctors);
  for (auto& a : f->args) check_term_arities_impl(a, ctors);
  if (f->left) check_formula_arities_impl(f->left, ctors);
  if (f->right) check_formula_arities_impl(f->right, ctors);
  if (f->body) check_formula_arities_impl(f->body->form, ctors);
}

void check_term_arities(const TermPtr& t, const ConstructorTable& ctors) {
  check_term_arities_impl(t, ctors);
}
void check_formula_arities(const FormulaPtr& f, const ConstructorTable& ctors) {
  check_formula_arities_impl(f, ctors);
}

}  // namespace

const Definition* SourceFile::find_definition(const std::string& name) const {
  for (auto& d : definitions)
    if (d.name == name) return &d;
  return nullptr;
}
const UDefinition* SourceFile::find_udefinition(const std::string& name) const {
  for (auto& d : udefinitions)
    if (d.name == name) return &d;
  return nullptr;
}
const TheoremDecl* SourceFile::find_theorem(const std::string& name) const {
  for (auto& d : theorems)
    if (d.name == name) return &d;
  return nullptr;
}
const QueryDecl* SourceFile::find_query(const std::string& name) const {
  for (auto& d : queries)
    if (d.name == name) return &d;
  return nullptr;
}

SourceFile parse_file(const std::string& text, const std::string& filename) {
  SourceFile file;
  Parser p;
  p.toks = lex(text);
  p.env = &file;
  try {
    while (p.peek().kind != Token::Kind::End) p.parse_decl(file);
  } catch (ParseError& e) {
    if (!filename.empty())
      throw ParseError(filename + ": " + e.what(), e.line, e.col);
    throw;
  }
  // First-order well-formedness: every constructor fully applied, nothing
  // else applied at all.
  for (auto& d : file.definitions)
    check_formula_arities(d.is_pred ? d.body->form : d.alias, file.ctors);
  for (auto& t : file.theorems) check_formula_arities(t.formula, file.ctors);
  for (auto& q : file.queries)
    for (auto& a : q.args) check_term_arities(a, file.ctors);
  return file;
}

namespace {
Parser make_parser(const std::string& text, const SourceFile* env) {
  Parser p;
  p.toks = lex(text);
  p.env = env;
  return p;
}
}  // namespace

FormulaPtr parse_formula(const std::string& text, const SourceFile& env) {
  Parser p = make_parser(text, &env);
  FormulaPtr f = p.formula();
  if (p.peek().kind != Token::Kind::End) p.fail("trailing input");
  return f;
}
FormulaPtr parse_formula(const std::string& text) {
  SourceFile env;
  return parse_formula(text, env);
}
UFormulaPtr parse_uformula(const std::string& text, const SourceFile& env) {
  Parser p = make_parser(text, &env);
  UFormulaPtr f = p.uformula();
  if (p.peek().kind != Token::Kind::End) p.fail("trailing input");
  return f;
}
UFormulaPtr parse_uformula(const std::string& text) {
  SourceFile env;
  return parse_uformula(text, env);
}
TermPtr parse_term(const std::string& text, const SourceFile& env) {
  Parser p = make_parser(text, &env);
  TermPtr t = p.term_spine();
  if (p.peek().kind != Token::Kind::End) p.fail("trailing input");
  return t;
}
TermPtr parse_term(const std::string& text) {
  SourceFile env;
  return parse_term(text, env);
}

// ---------------------------------------------------------------- printing

namespace {

// Precedence levels, higher binds tighter.
constexpr int kLvlQuant = 1, kLvlOr = 2, kLvlAnd = 3, kLvlPrefix = 4, kLvlAtom = 5;

struct Printer {
  std::set<std::string> used;
  std::vector<std::string> tnames;
  std::vector<std::string> pnames;

  std::string freshen(const std::string& hint) {
    std::string base = hint.empty() ? "x" : hint;
    if (kKeywords.count(base)) base += "0";
    if (!used.count(base)) return base;
    for (int i = 1;; ++i) {
      std::string cand = base + std::to_string(i);
      if (!used.count(cand)) return cand;
    }
  }

  void term(const TermPtr& t, std::ostringstream& os, bool parens) {
    if (auto n = term_to_numeral(t)) {
      os << *n;
      return;
    }
    switch (t->kind) {
      case Term::Kind::Var:
      case Term::Kind::Ctor:
        os << t->name;
        return;
      case Term::Kind::Bound: {
        int i = static_cast<int>(tnames.size()) - 1 - t->index;
        if (i >= 0) os << tnames[i];
        else os << "#" << t->index;
        return;
      }
      case Term::Kind::App:
        if (parens) os << "(";
        term(t->fn, os, false);
        os << " ";
        term(t->arg, os, true);
        if (parens) os << ")";
        return;
      case Term::Kind::Abs:
        throw FormulaError("print: lambda has no surface syntax");
    }
  }

  std::string term_str(const TermPtr& t, bool parens) {
    std::ostringstream os;
    term(t, os, parens);
    return os.str();
  }

  int level(const FormulaPtr& f) {
    switch (f->conn) {
      case Conn::Forall: case Conn::Exists: return kLvlQuant;
      case Conn::Par: case Conn::Plus: return kLvlOr;
      case Conn::Tensor: case Conn::With: return kLvlAnd;
      case Conn::Bang: case Conn::Quest: return kLvlPrefix;
      default: return kLvlAtom;
    }
  }

  void formula(const FormulaPtr& f, std::ostringstream& os, int min_level) {
    if (level(f) < min_level) {
      os << "(";
      formula(f, os, 0);
      os << ")";
      return;
    }
    switch (f->conn) {
      case Conn::One: os << "1"; return;
      case Conn::Zero: os << "0"; return;
      case Conn::Top: os << "top"; return;
      case Conn::Bot: os << "bot"; return;
      case Conn::Tensor: case Conn::With: {
        formula(f->left, os, kLvlAnd + 1);
        os << (f->conn == Conn::Tensor ? " * " : " & ");
        formula(f->right, os, kLvlAnd);
        return;
      }
      case Conn::Par: case Conn::Plus: {
        formula(f->left, os, kLvlOr + 1);
        os << (f->conn == Conn::Par ? " | " : " + ");
        formula(f->right, os, kLvlOr);
        return;
      }
      case Conn::Bang: case Conn::Quest: {
        os << (f->conn == Conn::Bang ? "! " : "? ");
        formula(f->left, os, kLvlPrefix);
        return;
      }
      case Conn::Eq: case Conn::Neq: {
        term(f->t1, os, false);
        os << (f->conn == Conn::Eq ? " = " : " != ");
        term(f->t2, os, false);
        return;
      }
      case Conn::Forall: case Conn::Exists: {
        std::string x = freshen(f->binder_hint);
        os << (f->conn == Conn::Forall ? "all " : "ex ") << x << ". ";
        used.insert(x);
        tnames.push_back(x);
        formula(f->left, os, kLvlQuant);
        tnames.pop_back();
        used.erase(x);
        return;
      }
      case Conn::Mu: case Conn::Nu: {
        os << (f->conn == Conn::Mu ? "mu (" : "nu (");
        body(f->body, os);
        os << ")";
        for (auto& a : f->args) os << " " << term_str(a, true);
        return;
      }
      case Conn::PredVar: {
        int i = static_cast<int>(pnames.size()) - 1 - f->pred_index;
        os << (i >= 0 ? pnames[i] : f->pred_hint);
        for (auto& a : f->args) os << " " << term_str(a, true);
        return;
      }
    }
  }

  void body(const BodyPtr& b, std::ostringstream& os) {
    std::string p = freshen(b->pred_hint.empty() ? "P" : b->pred_hint);
    used.insert(p);
    os << p;
    auto saved_t = std::move(tnames);
    auto saved_p = std::move(pnames);
    tnames.clear();
    pnames = {p};
    std::vector<std::string> inserted;
    for (int k = 0; k < b->arity; ++k) {
      std::string hint = k < static_cast<int>(b->hints.size()) ? b->hints[k] : "x";
      std::string x = freshen(hint);
      used.insert(x);
      inserted.push_back(x);
      tnames.push_back(x);
      os << " " << x;
    }
    os << " => ";
    formula(b->form, os, 0);
    for (auto& x : inserted) used.erase(x);
    used.erase(p);
    tnames = std::move(saved_t);
    pnames = std::move(saved_p);
  }

  void pred_abs(const PredAbsPtr& s, std::ostringstream& os) {
    os << "(";
    auto saved_t = std::move(tnames);
    tnames.clear();
    std::vector<std::string> inserted;
    for (int k = 0; k < s->arity; ++k) {
      std::string hint = k < static_cast<int>(s->hints.size()) ? s->hints[k] : "x";
      std::string x = freshen(hint);
      used.insert(x);
      inserted.push_back(x);
      tnames.push_back(x);
      os << x << " ";
    }
    os << "=> ";
    formula(s->form, os, 0);
    os << ")";
    for (auto& x : inserted) used.erase(x);
    tnames = std::move(saved_t);
  }

  int ulevel(const UFormulaPtr& u) {
    switch (u->conn) {
      case UConn::Forall: case UConn::Exists:
      case UConn::HForall: case UConn::HExists: return kLvlQuant;
      case UConn::Or: return kLvlOr;
      case UConn::And: return kLvlAnd;
      default: return kLvlAtom;
    }
  }

  void uformula(const UFormulaPtr& u, std::ostringstream& os, int min_level) {
    if (ulevel(u) < min_level) {
      os << "(";
      uformula(u, os, 0);
      os << ")";
      return;
    }
    switch (u->conn) {
      case UConn::Tt: os << "tt"; return;
      case UConn::Ff: os << "ff"; return;
      case UConn::And: case UConn::Or: {
        int lvl = u->conn == UConn::And ? kLvlAnd : kLvlOr;
        uformula(u->left, os, lvl + 1);
        os << (u->conn == UConn::And ? " /\\ " : " \\/ ");
        uformula(u->right, os, lvl);
        return;
      }
      case UConn::Eq: case UConn::Neq: {
        term(u->t1, os, false);
        os << (u->conn == UConn::Eq ? " = " : " != ");
        term(u->t2, os, false);
        return;
      }
      case UConn::Forall: case UConn::Exists:
      case UConn::HForall: case UConn::HExists: {
        std::string x = freshen(u->binder_hint);
        bool all = u->conn == UConn::Forall || u->conn == UConn::HForall;
        bool hat = u->conn == UConn::HForall || u->conn == UConn::HExists;
        os << (all ? "all" : "ex") << (hat ? "^ " : " ") << x << ". ";
        used.insert(x);
        tnames.push_back(x);
        uformula(u->left, os, kLvlQuant);
        tnames.pop_back();
        used.erase(x);
        return;
      }
      case UConn::Mu: case UConn::Nu: {
        os << (u->conn == UConn::Mu ? "mu (" : "nu (");
        ubody(u->body, os);
        os << ")";
        for (auto& a : u->args) os << " " << term_str(a, true);
        return;
      }
      case UConn::PredVar: {
        int i = static_cast<int>(pnames.size()) - 1 - u->pred_index;
        os << (i >= 0 ? pnames[i] : u->pred_hint);
        for (auto& a : u->args) os << " " << term_str(a, true);
        return;
      }
    }
  }

  void ubody(const UBodyPtr& b, std::ostringstream& os) {
    std::string p = freshen(b->pred_hint.empty() ? "P" : b->pred_hint);
    used.insert(p);
    os << p;
    auto saved_t = std::move(tnames);
    auto saved_p = std::move(pnames);
    tnames.clear();
    pnames = {p};
    std::vector<std::string> inserted;
    for (int k = 0; k < b->arity; ++k) {
      std::string hint = k < static_cast<int>(b->hints.size()) ? b->hints[k] : "x";
      std::string x = freshen(hint);
      used.insert(x);
      inserted.push_back(x);
      tnames.push_back(x);
      os << " " << x;
    }
    os << " => ";
    uformula(b->form, os, 0);
    for (auto& x : inserted) used.erase(x);
    used.erase(p);
    tnames = std::move(saved_t);
    pnames = std::move(saved_p);
  }
};

Printer printer_for_free_vars(const std::set<std::string>& fv) {
  Printer pr;
  pr.used = fv;
  pr.used.insert("z");
  pr.used.insert("s");
  return pr;
}

void collect_ufree(const UFormulaPtr& u, std::set<std::string>& out) {
  if (u->t1) collect_free_vars(u->t1, out);
  if (u->t2) collect_free_vars(u->t2, out);
  for (auto& a : u->args) collect_free_vars(a, out);
  if (u->left) collect_ufree(u->left, out);
  if (u->right) collect_ufree(u->right, out);
  if (u->body) collect_ufree(u->body->form, out);
}

}  // namespace

std::string print_formula(const FormulaPtr& f) {
  Printer pr = printer_for_free_vars(free_vars(f));
  std::ostringstream os;
  pr.formula(f, os, 0);
  return os.str();
}

std::string print_uformula(const UFormulaPtr& u) {
  std::set<std::string> fv;
  collect_ufree(u, fv);
  Printer pr = printer_for_free_vars(fv);
  std::ostringstream os;
  pr.uformula(u, os, 0);
  return os.str();
}

std::string print_pred_abs(const PredAbsPtr& s) {
  Printer pr = printer_for_free_vars(free_vars(s->form));
  std::ostringstream os;
  pr.pred_abs(s, os);
  return os.str();
}

namespace {

void print_proof_rec(const ProofNodePtr& p, std::ostringstream& os, int indent) {
  std::string pad(indent, ' ');
  os << pad << p->rule;
  const std::string& r = p->rule;
  if (r == "tensor") {
    os << "(" << p->principal << ", [";
    for (std::size_t i = 0; i < p->split.size(); ++i)
      os << (i ? ", " : "") << p->split[i];
    os << "])";
  } else if (r == "cut") {
    os << "(" << print_formula(p->cut_formula) << ", [";
    for (std::size_t i = 0; i < p->split.size(); ++i)
      os << (i ? ", " : "") << p->split[i];
    os << "])";
  } else if (r == "oplus") {
    os << "(" << p->principal << ", " << p->alt << ")";
  } else if (r == "exists") {
    Printer pr = printer_for_free_vars(free_vars(p->witness));
    os << "(" << p->principal << ", " << pr.term_str(p->witness, false) << ")";
  } else if (r == "forall") {
    os << "(" << p->principal << ", " << p->var_name << ")";
  } else if (r == "nu") {
    os << "(" << p->principal << ", " << print_pred_abs(p->invariant) << ")";
  } else if (r == "cnn") {
    os << "(" << p->principal << ", " << print_pred_abs(p->invariant) << ", "
       << print_pred_abs(p->invariant2) << ")";
  } else if (r == "one" || r == "eq" || r == "munu" || r == "init" || r == "id") {
    // no annotation
  } else {
    os << "(" << p->principal << ")";
  }
  if (!p->children.empty()) {
    os << " {\n";
    for (std::size_t i = 0; i < p->children.size(); ++i) {
      print_proof_rec(p->children[i], os, indent + 2);
      if (i + 1 < p->children.size()) os << ";";
      os << "\n";
    }
    os << pad << "}";
  }
}

}  // namespace

std::string print_proof(const ProofNodePtr& p) {
  std::ostringstream os;
  print_proof_rec(p, os, 0);
  return os.str();
}

}  // namespace mumall
