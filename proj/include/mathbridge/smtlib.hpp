#ifndef MATHBRIDGE_SMTLIB_HPP
#define MATHBRIDGE_SMTLIB_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mathbridge/error.hpp"
#include "mathbridge/term.hpp"

namespace mathbridge {

// S-expression surface syntax; spellings of spec_constants are kept bit-exact
// because their semantics is theory-local.
struct SExpr {
  enum class Kind { Numeral, Decimal, Hexadecimal, Binary, String, SymbolToken, Keyword, List };
  Kind kind = Kind::List;
  std::string text;           // atom payload (String holds decoded content)
  bool quoted = false;        // symbol was written |...|
  std::vector<SExpr> items;   // list children
  SourcePos pos;

  static SExpr atom(Kind k, std::string text);
  static SExpr list(std::vector<SExpr> items);
};

// Errors: UnbalancedParen, BadToken.
std::vector<SExpr> lex_sexpr(const std::string& text);

std::string print_sexpr(const SExpr& s);

struct Command {
  enum class Kind {
    DeclareSort,
    DeclareFun,
    DefineFun,
    Assert,
    CheckSat,
    GetValue,
    GetModel,
    Maximize,
    Minimize,
    SetLogic,
    Exit,
    Passthrough,  // unknown commands are kept verbatim
  };
  Kind kind;
  std::string name;              // declare-sort / declare-fun / define-fun / set-logic
  size_t sort_arity = 0;         // declare-sort
  std::vector<Sort> arg_sorts;   // declare-fun
  std::optional<Sort> result_sort;
  std::vector<BoundVar> params;  // define-fun
  Term term;                     // assert / maximize / minimize / define-fun body
  std::vector<Term> terms;       // get-value
  SExpr raw;                     // passthrough
};

struct Script {
  std::vector<Command> commands;
};

struct SolverResult {
  enum class Status { Sat, Unsat, Unknown };
  Status status = Status::Unknown;
  std::optional<std::vector<std::pair<Term, Term>>> model;

  // Enforces the output contract: a model only with Sat, no two bindings with
  // the same left-hand term, values restricted to canonical literal shapes.
  static SolverResult sat(std::vector<std::pair<Term, Term>> model);
  static SolverResult unsat();
  static SolverResult unknown();
};

// Scope for term parsing. Lenient mode turns unknown atoms into variables and
// unknown heads into theory symbols; strict mode (scripts) requires every
// head to be declared or built in.
struct SmtParseCtx {
  std::map<std::string, size_t> declared;  // function name -> arity
  std::set<std::string> bound;
  bool strict = false;
};

// Errors: DuplicateLetName, UnknownSymbol, Arity, Syntax.
// `let` is expanded on the spot; `forall`/`exists` normalize shadowed names.
Term parse_smt_term(const SExpr& s, const SmtParseCtx& ctx);

// Errors: as parse_smt_term plus Syntax on malformed commands. Unknown
// commands become Passthrough entries and append a note to `warnings`.
Script parse_script(const std::string& text, std::vector<std::string>* warnings = nullptr);

// Errors: UnsortedBinder, UnloweredExtension, UnmappedBinder, Unprintable.
std::string print_smt(const Term& t, std::vector<std::string>* warnings = nullptr);
std::string print_smt(const Script& s, std::vector<std::string>* warnings = nullptr);
std::string print_smt(const SolverResult& r);

std::string print_sort_smt(const Sort& s);

// One canonical value term per rational: integer literal, (- n),
// (/ p q) with q > 1, or (- (/ p q)).
bool is_canonical_value_term(const Term& t);

// Exact decimal expansion of a binary64 value (finite, since every double is
// dyadic); SMT decimals have no exponent form. Throws Unprintable for NaN/Inf.
std::string float_to_smt_decimal(double v);

}  // namespace mathbridge

#endif
