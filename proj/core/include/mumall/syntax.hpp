#ifndef MUMALL_SYNTAX_HPP
#define MUMALL_SYNTAX_HPP

#include <map>
#include <string>
#include <vector>

#include "mumall/checker.hpp"
#include "mumall/uformula.hpp"

namespace mumall {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " (line " + std::to_string(line_) + ", col " +
                           std::to_string(col_) + ")"),
        line(line_), col(col_) {}
};

// A named definition: either a fixed point predicate (usable applied to
// terms) or an alias for a closed formula.
struct Definition {
  std::string name;
  bool is_pred = false;
  Conn fix_conn = Conn::Mu;  // when is_pred
  BodyPtr body;              // when is_pred
  FormulaPtr alias;          // when !is_pred
};

struct UDefinition {
  std::string name;
  bool is_pred = false;
  UConn fix_conn = UConn::Mu;  // when is_pred
  UBodyPtr body;               // when is_pred
  UFormulaPtr alias;           // when !is_pred
};

struct TheoremDecl {
  std::string name;
  FormulaPtr formula;
};

struct ProofDecl {
  std::string name;  // names the theorem it proves
  RuleSet rules;
  ProofNodePtr tree;
};

struct QueryDecl {
  std::string name;
  std::string pred;            // a defined fixed point predicate
  std::vector<TermPtr> args;   // ground, arity-1 of them
};

struct SourceFile {
  ConstructorTable ctors;
  std::vector<Definition> definitions;       // in declaration order
  std::vector<UDefinition> udefinitions;
  std::vector<TheoremDecl> theorems;
  std::vector<ProofDecl> proofs;
  std::vector<QueryDecl> queries;

  const Definition* find_definition(const std::string& name) const;
  const UDefinition* find_udefinition(const std::string& name) const;
  const TheoremDecl* find_theorem(const std::string& name) const;
  const QueryDecl* find_query(const std::string& name) const;
};

// Parses a whole .mumall source file.  Declarations:
//   constructor NAME : iota -> ... -> iota
//   define NAME := mu (p x1 .. xn => F)        (or nu, or a closed formula)
//   udefine NAME := U                          (unpolarized formula)
//   theorem NAME : F
//   proof NAME [core|core+|mulk|mulk+] [sigma1] { RULE-TREE }
//   query NAME := compute(PRED, t1, ..., tk)
// Comments run from '#' to end of line.
SourceFile parse_file(const std::string& text, const std::string& filename = "");

// Standalone-entry parsers; `env` supplies constructors and definitions that
// formulas may reference (defaulted to the builtin constructor table only).
FormulaPtr parse_formula(const std::string& text, const SourceFile& env);
FormulaPtr parse_formula(const std::string& text);
UFormulaPtr parse_uformula(const std::string& text, const SourceFile& env);
UFormulaPtr parse_uformula(const std::string& text);
TermPtr parse_term(const std::string& text, const SourceFile& env);
TermPtr parse_term(const std::string& text);

std::string print_formula(const FormulaPtr& f);
std::string print_uformula(const UFormulaPtr& u);
std::string print_pred_abs(const PredAbsPtr& s);
std::string print_proof(const ProofNodePtr& p);  // re-parseable rule tree

}  // namespace mumall

#endif
