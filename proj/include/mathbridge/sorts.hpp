#ifndef MATHBRIDGE_SORTS_HPP
#define MATHBRIDGE_SORTS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mathbridge/smtlib.hpp"
#include "mathbridge/term.hpp"

namespace mathbridge {

// A signature argument/result position: either a sort variable (written OMV in
// the STS files, e.g. AbelianSemiGroup) or a concrete, possibly parametric
// sort. The constructor name "->" denotes a function sort (sts.mapsto used as
// a sort former).
struct SortSpec {
  bool is_var = false;
  std::string var;
  std::string ctor;
  std::vector<SortSpec> args;

  static SortSpec variable(std::string name);
  static SortSpec concrete(Sort s);
  static SortSpec ctor_of(std::string name, std::vector<SortSpec> args);
};

struct StsSignature {
  enum class Shape { Mapsto, NAssoc };
  Symbol symbol;
  Shape shape = Shape::Mapsto;
  std::vector<SortSpec> args;  // Mapsto: positional argument specs
  SortSpec element;            // NAssoc: the repeated argument spec
  SortSpec result;
};

// Maps literal kinds to sort names; constants are theory-local, so this is a
// pluggable profile rather than a fixed rule.
struct TheoryProfile {
  std::map<LiteralKind, std::string> literal_sorts;
  std::map<std::string, Sort> var_sorts;  // extension entries: var.<name>=<sort>

  static TheoryProfile standard();
  // Lines of "literal.<kind>=<sort>" or "var.<name>=<sort>"; '#' comments.
  static TheoryProfile parse(const std::string& text);
};

struct SignatureTable {
  std::map<Symbol, StsSignature> sts;
  std::map<std::string, size_t> declared_sorts;                            // name -> arity
  std::map<std::string, std::pair<std::vector<Sort>, Sort>> declared_funs; // SMT tokens
  std::map<std::string, Sort> var_sorts;
  TheoryProfile profile = TheoryProfile::standard();

  void add(StsSignature sig);
  void declare_sort(const std::string& name, size_t arity);
  void declare_fun(const std::string& name, std::vector<Sort> args, Sort result);
  void absorb_script_declarations(const Script& s);

  // Core SMT-LIB tokens (=, and, not, +, ...) plus the OpenMath CD entries the
  // registry covers, as polymorphic signatures.
  static SignatureTable standard();
};

// Parses the Fig. 2-style XML signature format. The content dictionary comes
// from a <CDSignatures cd="..."> wrapper, a cd attribute on <Signature>, or
// the supplied default. Errors: BadSignatureXml, UnknownStsCombinator.
std::vector<StsSignature> load_sts(const std::string& text, const std::string& default_cd);

// Returns the sort of t. Unsorted bound variables get inference placeholders
// that must unify consistently; an unresolved placeholder prints as "?N".
// Errors: UnknownSymbolSort, ArityMismatch, SortMismatch, UnsortedFreeVariable.
Sort check_sorts(const Term& t, const SignatureTable& table);

}  // namespace mathbridge

#endif
