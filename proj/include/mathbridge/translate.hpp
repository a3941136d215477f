#ifndef MATHBRIDGE_TRANSLATE_HPP
#define MATHBRIDGE_TRANSLATE_HPP

#include <map>
#include <string>

#include "mathbridge/extensions.hpp"
#include "mathbridge/smtlib.hpp"
#include "mathbridge/sorts.hpp"
#include "mathbridge/term.hpp"

namespace mathbridge {

// Bidirectional OpenMath symbol <-> SMT-LIB token map. Unmapped OpenMath
// symbols print as the quoted token |cd.name| and come back by splitting at
// the first dot. alg1.one / alg1.zero map to theory literals one way only;
// literals never symbolize on the way back.
struct SymbolMap {
  std::map<Symbol, std::string> forward;
  std::map<std::string, Symbol> reverse;
  std::map<Symbol, Literal> literal_forward;

  // Throws NonInjectiveMap when a token would reverse to two symbols (the
  // arith1/arith2 times pair is the sanctioned exception).
  void add(const Symbol& sym, const std::string& token);
  void add_literal(const Symbol& sym, Literal value);

  static SymbolMap standard();
  // Extends the standard map; lines "cd.name = token", '#' comments. A token
  // that lexes as a numeral or decimal becomes a literal mapping.
  static SymbolMap parse(const std::string& text);
};

struct TranslateOptions {
  enum class TimesCd { Arith1, Arith2 };
  TimesCd times_cd = TimesCd::Arith1;  // reverse target for '*'
  TheoryProfile profile = TheoryProfile::standard();
};

// Errors: UnmappedBinder, UnsortableVariable, UnloweredExtension,
// Untranslatable. Attributions are dropped (SMT-LIB has no such channel);
// bound variables take sorts from the term or from table.var_sorts.
Term om_to_smt(const Term& t, const SymbolMap& map, const SignatureTable& table);

// Errors: IrreversibleMangling, NonArithmeticProfile. Sorted binders keep
// their sorts on the bound variables; (- numeral) folds to a negative OMI.
Term smt_to_om(const Term& t, const SymbolMap& map, const TranslateOptions& options = {});

struct RoundtripReport {
  bool ok = false;
  std::string diagnostic;
};

// om_to_smt then smt_to_om, compared alpha-equal after attribution stripping.
RoundtripReport roundtrip_check(const Term& t, const SymbolMap& map,
                                const SignatureTable& table,
                                const TranslateOptions& options = {});

// Turns a top-level argmaxone binder over "x in interval_cc(a, b)" into the
// witness-producing optimization script, translating body and bounds with the
// given map. The witness variable sorts default to Real.
Script argmaxone_to_script(const Term& t, const SymbolMap& map, const SignatureTable& table,
                           const TranslateOptions& options = {});

}  // namespace mathbridge

#endif
