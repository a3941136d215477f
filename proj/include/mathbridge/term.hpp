#ifndef MATHBRIDGE_TERM_HPP
#define MATHBRIDGE_TERM_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "mathbridge/symbol.hpp"

namespace mathbridge {

enum class LiteralKind {
  // OpenMath basic objects
  Integer,    // arbitrary precision, canonical decimal text
  Float64,    // one IEEE binary64 value
  String,
  ByteArray,
  // SMT-LIB spec_constants; spelling preserved exactly (theory-local semantics)
  Numeral,
  Decimal,
  Hexadecimal,
  Binary,
};

struct Literal {
  LiteralKind kind;
  // Integer: canonical decimal (optional '-', no leading zeros).
  // Numeral/Decimal/Hexadecimal/Binary: source spelling, bit-exact.
  // String: the decoded character content. ByteArray: raw bytes.
  std::string text;
  double f64 = 0.0;  // meaningful only for Float64

  static Literal integer(const std::string& decimal_text);
  static Literal float64(double v);
  static Literal string(std::string s);
  static Literal bytes(std::string raw);
  static Literal numeral(std::string spelling);
  static Literal decimal(std::string spelling);
  static Literal hexadecimal(std::string spelling);
  static Literal binary(std::string spelling);

  bool operator==(const Literal& o) const;
};

struct Sort {
  std::string name;
  std::vector<Sort> args;        // parametric sorts
  bool interpreted = false;      // Int/Real/Bool vs. user-declared

  bool operator==(const Sort& o) const { return name == o.name && args == o.args; }
  bool operator!=(const Sort& o) const { return !(*this == o); }
  std::string str() const;

  static Sort simple(std::string name);
};

struct BoundVar {
  std::string name;
  std::optional<Sort> sort;  // mandatory for SMT-origin forall/exists

  bool operator==(const BoundVar&) const = default;
};

struct TermNode;

// Immutable shared term; value semantics, cheap to copy.
class Term {
 public:
  Term() = default;  // empty handle; only valid after assignment

  static Term sym(Symbol s);
  static Term var(std::string name);
  static Term lit(Literal l);
  static Term apply(Term head, std::vector<Term> args);
  static Term bind(Symbol binder, std::vector<BoundVar> vars, Term body);
  static Term bind_conditional(Symbol binder, std::vector<BoundVar> vars, Term body,
                               Term condition);
  static Term attributed(std::vector<std::pair<Symbol, Term>> pairs, Term base);
  static Term error_term(Symbol s, std::vector<Term> args);
  static Term foreign(std::string encoding, std::string blob);

  const TermNode& node() const { return *node_; }
  bool valid() const { return node_ != nullptr; }

  bool operator==(const Term& o) const;  // structural equality
  bool operator!=(const Term& o) const { return !(*this == o); }

 private:
  explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const TermNode> node_;
};

struct SymNode {
  Symbol symbol;
  bool operator==(const SymNode&) const = default;
};
struct VarNode {
  std::string name;
  bool operator==(const VarNode&) const = default;
};
struct LitNode {
  Literal value;
  bool operator==(const LitNode&) const = default;
};
struct ApplyNode {
  Term head;
  std::vector<Term> args;
  bool operator==(const ApplyNode&) const = default;
};
struct BindNode {
  Symbol binder;
  std::vector<BoundVar> vars;       // at least one
  std::optional<Term> condition;    // restricting predicate (extension binders)
  Term body;
  bool operator==(const BindNode&) const = default;
};
struct AttrNode {
  std::vector<std::pair<Symbol, Term>> pairs;
  Term base;
  bool operator==(const AttrNode&) const = default;
};
struct ErrorNode {
  Symbol symbol;
  std::vector<Term> args;
  bool operator==(const ErrorNode&) const = default;
};
struct ForeignNode {
  std::string encoding;
  std::string blob;
  bool operator==(const ForeignNode&) const = default;
};

struct TermNode {
  std::variant<SymNode, VarNode, LitNode, ApplyNode, BindNode, AttrNode, ErrorNode, ForeignNode>
      v;
};

// Accessors; return nullptr when the term is a different variant.
const SymNode* as_sym(const Term& t);
const VarNode* as_var(const Term& t);
const LitNode* as_lit(const Term& t);
const ApplyNode* as_apply(const Term& t);
const BindNode* as_bind(const Term& t);
const AttrNode* as_attr(const Term& t);
const ErrorNode* as_error(const Term& t);
const ForeignNode* as_foreign(const Term& t);

// ---- variable and substitution machinery -----------------------------------

std::set<std::string> free_variables(const Term& t);

// Every name occurring in t, free or bound (used for fresh-name generation).
std::set<std::string> all_names(const Term& t);

// Capture-avoiding simultaneous substitution. Binding names must be pairwise
// distinct (DuplicateBindingName otherwise); replacements are all read from
// the original term, never chained.
Term substitute_simultaneous(const Term& t,
                             const std::vector<std::pair<std::string, Term>>& bindings);

// Equality up to consistent renaming of bound variables.
bool alpha_equal(const Term& a, const Term& b);

// Least-suffix fresh name: base!1, base!2, ... not contained in `avoid`.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

// Removes Attributed wrappers and BoundVar sorts (the attribution channel).
Term strip_attributions(const Term& t);

// True iff some symbol of Extension origin occurs in t. Attribution keys equal
// to sts.sort are ignored: they are the sort channel, not a constructor.
bool contains_extension_symbol(const Term& t);

// Pre-order walk over every subterm.
void walk(const Term& t, const std::function<void(const Term&)>& fn);

}  // namespace mathbridge

#endif
