#ifndef MATHBRIDGE_SYMBOL_HPP
#define MATHBRIDGE_SYMBOL_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mathbridge {

enum class SymbolOrigin {
  OpenMathCD,  // lives in an OpenMath content dictionary (arith1, quant1, ...)
  SMTTheory,   // an SMT-LIB theory token (+, =, forall, ...)
  Extension,   // proposed constructors (quant2, minmax2, sts.sort)
};

// A qualified operator name: content dictionary + name, or theory tag + token.
struct Symbol {
  std::string cd;    // CD name, or the theory tag "smt"
  std::string name;
  SymbolOrigin origin = SymbolOrigin::OpenMathCD;

  bool operator==(const Symbol&) const = default;
  bool operator<(const Symbol& o) const {
    if (cd != o.cd) return cd < o.cd;
    if (name != o.name) return name < o.name;
    return origin < o.origin;
  }

  std::string qualified() const { return cd + "." + name; }
};

// Fixed registry of the symbols this toolkit knows by name.
namespace syms {

Symbol om(std::string_view cd, std::string_view name);
Symbol smt(std::string_view token);

// Returns the registered symbol for cd.name, if any (knows the right origin).
std::optional<Symbol> lookup(std::string_view cd, std::string_view name);
const std::vector<Symbol>& all_registered();

const Symbol& arith1_plus();
const Symbol& arith1_times();
const Symbol& arith1_minus();
const Symbol& arith1_divide();
const Symbol& arith1_unary_minus();
const Symbol& arith2_times();
const Symbol& alg1_one();
const Symbol& alg1_zero();
const Symbol& quant1_forall();
const Symbol& quant1_exists();
const Symbol& relation1_eq();
const Symbol& relation1_neq();
const Symbol& relation1_lt();
const Symbol& relation1_leq();
const Symbol& logic1_and();
const Symbol& logic1_or();
const Symbol& logic1_not();
const Symbol& logic1_implies();
const Symbol& logic1_true();
const Symbol& logic1_false();
const Symbol& set1_map();
const Symbol& set1_in();
const Symbol& set1_suchthat();
const Symbol& fns1_lambda();
const Symbol& interval1_interval_cc();
const Symbol& minmax1_max();
const Symbol& minmax1_min();
const Symbol& sts_mapsto();
const Symbol& sts_nassoc();
const Symbol& sts_sort();  // attribution key carrying a sort on a bound variable

// Extension constructors proposed by the dialect.
const Symbol& quant2_exists_unique();
const Symbol& minmax2_max();      // binder form: body + restricting predicate
const Symbol& minmax2_max_sf();   // operator form: (set, function)
const Symbol& minmax2_argmax();
const Symbol& minmax2_argmaxone();

// SMT-LIB core tokens used throughout.
const Symbol& smt_forall();
const Symbol& smt_exists();
const Symbol& smt_true();
const Symbol& smt_false();

}  // namespace syms

}  // namespace mathbridge

#endif
