#include "mathbridge/symbol.hpp"

#include <map>

namespace mathbridge::syms {

namespace {

struct Registry {
  std::vector<Symbol> ordered;
  std::map<std::pair<std::string, std::string>, Symbol> by_name;

  void add(const char* cd, const char* name, SymbolOrigin origin) {
    Symbol s{cd, name, origin};
    ordered.push_back(s);
    by_name.emplace(std::make_pair(s.cd, s.name), s);
  }
};

const Registry& registry() {
  static const Registry reg = [] {
    Registry r;
    const auto OM = SymbolOrigin::OpenMathCD;
    const auto EXT = SymbolOrigin::Extension;
    r.add("arith1", "plus", OM);
    r.add("arith1", "times", OM);
    r.add("arith1", "minus", OM);
    r.add("arith1", "divide", OM);
    r.add("arith1", "unary_minus", OM);
    r.add("arith2", "times", OM);
    r.add("alg1", "one", OM);
    r.add("alg1", "zero", OM);
    r.add("quant1", "forall", OM);
    r.add("quant1", "exists", OM);
    r.add("relation1", "eq", OM);
    r.add("relation1", "neq", OM);
    r.add("relation1", "lt", OM);
    r.add("relation1", "leq", OM);
    r.add("logic1", "and", OM);
    r.add("logic1", "or", OM);
    r.add("logic1", "not", OM);
    r.add("logic1", "implies", OM);
    r.add("logic1", "true", OM);
    r.add("logic1", "false", OM);
    r.add("set1", "map", OM);
    r.add("set1", "in", OM);
    r.add("set1", "suchthat", OM);
    r.add("fns1", "lambda", OM);
    r.add("interval1", "interval_cc", OM);
    r.add("minmax1", "max", OM);
    r.add("minmax1", "min", OM);
    r.add("sts", "mapsto", OM);
    r.add("sts", "nassoc", OM);
    r.add("sts", "sort", EXT);
    r.add("quant2", "exists_unique", EXT);
    r.add("minmax2", "max", EXT);
    r.add("minmax2", "max_sf", EXT);
    r.add("minmax2", "argmax", EXT);
    r.add("minmax2", "argmaxone", EXT);
    return r;
  }();
  return reg;
}

const Symbol& get(const char* cd, const char* name) {
  return registry().by_name.at(std::make_pair(std::string(cd), std::string(name)));
}

}  // namespace

Symbol om(std::string_view cd, std::string_view name) {
  if (auto s = lookup(cd, name)) return *s;
  return Symbol{std::string(cd), std::string(name), SymbolOrigin::OpenMathCD};
}

Symbol smt(std::string_view token) {
  return Symbol{"smt", std::string(token), SymbolOrigin::SMTTheory};
}

std::optional<Symbol> lookup(std::string_view cd, std::string_view name) {
  const auto& m = registry().by_name;
  auto it = m.find(std::make_pair(std::string(cd), std::string(name)));
  if (it == m.end()) return std::nullopt;
  return it->second;
}

const std::vector<Symbol>& all_registered() { return registry().ordered; }

const Symbol& arith1_plus() { return get("arith1", "plus"); }
const Symbol& arith1_times() { return get("arith1", "times"); }
const Symbol& arith1_minus() { return get("arith1", "minus"); }
const Symbol& arith1_divide() { return get("arith1", "divide"); }
const Symbol& arith1_unary_minus() { return get("arith1", "unary_minus"); }
const Symbol& arith2_times() { return get("arith2", "times"); }
const Symbol& alg1_one() { return get("alg1", "one"); }
const Symbol& alg1_zero() { return get("alg1", "zero"); }
const Symbol& quant1_forall() { return get("quant1", "forall"); }
const Symbol& quant1_exists() { return get("quant1", "exists"); }
const Symbol& relation1_eq() { return get("relation1", "eq"); }
const Symbol& relation1_neq() { return get("relation1", "neq"); }
const Symbol& relation1_lt() { return get("relation1", "lt"); }
const Symbol& relation1_leq() { return get("relation1", "leq"); }
const Symbol& logic1_and() { return get("logic1", "and"); }
const Symbol& logic1_or() { return get("logic1", "or"); }
const Symbol& logic1_not() { return get("logic1", "not"); }
const Symbol& logic1_implies() { return get("logic1", "implies"); }
const Symbol& logic1_true() { return get("logic1", "true"); }
const Symbol& logic1_false() { return get("logic1", "false"); }
const Symbol& set1_map() { return get("set1", "map"); }
const Symbol& set1_in() { return get("set1", "in"); }
const Symbol& set1_suchthat() { return get("set1", "suchthat"); }
const Symbol& fns1_lambda() { return get("fns1", "lambda"); }
const Symbol& interval1_interval_cc() { return get("interval1", "interval_cc"); }
const Symbol& minmax1_max() { return get("minmax1", "max"); }
const Symbol& minmax1_min() { return get("minmax1", "min"); }
const Symbol& sts_mapsto() { return get("sts", "mapsto"); }
const Symbol& sts_nassoc() { return get("sts", "nassoc"); }
const Symbol& sts_sort() { return get("sts", "sort"); }
const Symbol& quant2_exists_unique() { return get("quant2", "exists_unique"); }
const Symbol& minmax2_max() { return get("minmax2", "max"); }
const Symbol& minmax2_max_sf() { return get("minmax2", "max_sf"); }
const Symbol& minmax2_argmax() { return get("minmax2", "argmax"); }
const Symbol& minmax2_argmaxone() { return get("minmax2", "argmaxone"); }

const Symbol& smt_forall() {
  static const Symbol s = smt("forall");
  return s;
}
const Symbol& smt_exists() {
  static const Symbol s = smt("exists");
  return s;
}
const Symbol& smt_true() {
  static const Symbol s = smt("true");
  return s;
}
const Symbol& smt_false() {
  static const Symbol s = smt("false");
  return s;
}

}  // namespace mathbridge::syms
