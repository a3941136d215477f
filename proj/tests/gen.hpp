#ifndef MATHBRIDGE_TEST_GEN_HPP
#define MATHBRIDGE_TEST_GEN_HPP

// Deterministic random-term generators, one per concrete syntax, shaped so
// every generated term is expressible in that syntax.

#include <random>
#include <string>
#include <vector>

#include "mathbridge/term.hpp"

namespace mbtest {

class TermGen {
 public:
  enum class Lang { Om, Popcorn, Smt };

  TermGen(Lang lang, uint32_t seed) : lang_(lang), rng_(seed) {}

  mathbridge::Term term() { return gen(3); }

 private:
  using Term = mathbridge::Term;
  using BoundVar = mathbridge::BoundVar;
  using Sort = mathbridge::Sort;
  using Literal = mathbridge::Literal;

  Lang lang_;
  std::mt19937 rng_;

  size_t pick(size_t n) { return rng_() % n; }

  std::string var_name() {
    static const char* names[] = {"x", "y", "z", "a", "b", "v1", "w_2", "x!1"};
    size_t limit = lang_ == Lang::Smt ? 7 : 8;  // '!' names stay OpenMath-side
    return names[pick(limit)];
  }

  mathbridge::Symbol om_symbol() {
    using namespace mathbridge::syms;
    switch (pick(8)) {
      case 0: return arith1_plus();
      case 1: return arith1_times();
      case 2: return arith1_minus();
      case 3: return relation1_eq();
      case 4: return logic1_and();
      case 5: return set1_in();
      case 6: return om("transc1", "sin");
      default: return om("poly" + std::to_string(pick(3)), "op" + std::to_string(pick(3)));
    }
  }

  std::string smt_token(size_t arity) {
    if (arity == 1 && pick(2) == 0) return "not";
    if (arity == 2) {
      static const char* ops[] = {"+", "*", "-", "=", "and", "or", "<", "<="};
      if (pick(2) == 0) return ops[pick(8)];
    }
    return "f" + std::to_string(arity) + "_" + std::to_string(pick(3));
  }

  Sort sort() {
    switch (pick(4)) {
      case 0: return Sort::simple("Int");
      case 1: return Sort::simple("Real");
      case 2: return Sort::simple("S");
      default: {
        Sort s = Sort::simple("Set");
        s.args.push_back(Sort::simple("Int"));
        return s;
      }
    }
  }

  Literal literal() {
    if (lang_ == Lang::Smt) {
      switch (pick(5)) {
        case 0: return Literal::numeral(std::to_string(pick(1000)));
        case 1: return Literal::numeral("00" + std::to_string(pick(10)));
        case 2: return Literal::decimal(std::to_string(pick(100)) + "." +
                                        std::to_string(pick(100)));
        case 3: return Literal::hexadecimal(pick(2) ? "#xFF" : "#x0a1B");
        default: return Literal::binary(pick(2) ? "#b01" : "#b1100");
      }
    }
    switch (pick(5)) {
      case 0: return Literal::integer(std::to_string(pick(1000)));
      case 1: return Literal::integer("-" + std::to_string(pick(1000)));
      case 2: return Literal::float64(static_cast<double>(pick(64)) / 4.0);
      case 3: return Literal::string(pick(2) ? "plain" : "with \"quotes\" & <tags>");
      default: return Literal::bytes(std::string("\x01\x02\xff", pick(4)));
    }
  }

  std::vector<BoundVar> bound_vars() {
    std::vector<BoundVar> out;
    size_t n = 1 + pick(2);
    for (size_t k = 0; k < n; ++k) {
      std::string name = var_name();
      bool dup = false;
      for (const auto& bv : out) dup = dup || bv.name == name;
      if (dup) continue;
      BoundVar bv{name, std::nullopt};
      if (lang_ == Lang::Smt || pick(3) == 0) bv.sort = sort();
      out.push_back(std::move(bv));
    }
    if (out.empty()) out.push_back(BoundVar{"u", lang_ == Lang::Smt
                                                     ? std::optional<Sort>(sort())
                                                     : std::nullopt});
    return out;
  }

  Term gen(int depth) {
    using namespace mathbridge::syms;
    if (depth == 0) {
      switch (pick(3)) {
        case 0: return Term::var(var_name());
        case 1: return Term::lit(literal());
        default:
          if (lang_ == Lang::Smt)
            return Term::sym(pick(2) ? smt_true() : smt_false());
          return Term::sym(om_symbol());
      }
    }
    size_t choice = pick(lang_ == Lang::Smt ? 7 : 10);
    switch (choice) {
      case 0:
      case 1:
      case 2:
      case 3: {  // application
        size_t arity = lang_ == Lang::Smt ? 1 + pick(3) : pick(4);
        std::vector<Term> args;
        for (size_t k = 0; k < arity; ++k) args.push_back(gen(depth - 1));
        if (lang_ == Lang::Smt) {
          std::string tok = smt_token(arity);
          if (tok == "not") arity = 1;
          return Term::apply(Term::sym(smt(tok)), std::move(args));
        }
        return Term::apply(Term::sym(om_symbol()), std::move(args));
      }
      case 4: {  // quantifier
        auto binder = lang_ == Lang::Smt ? (pick(2) ? smt_forall() : smt_exists())
                                         : (pick(2) ? quant1_forall() : quant1_exists());
        return Term::bind(binder, bound_vars(), gen(depth - 1));
      }
      case 5:
        return Term::var(var_name());
      case 6:
        return Term::lit(literal());
      case 7: {  // lambda or conditional binder (OpenMath side only)
        if (pick(2)) {
          return Term::bind(fns1_lambda(), bound_vars(), gen(depth - 1));
        }
        std::vector<BoundVar> vars = {BoundVar{var_name(), std::nullopt}};
        return Term::bind_conditional(minmax2_max(), vars, gen(depth - 1), gen(depth - 1));
      }
      case 8: {  // attribution
        std::vector<std::pair<mathbridge::Symbol, Term>> pairs;
        pairs.emplace_back(om("meta", "note"), gen(depth - 1));
        if (pick(2)) pairs.emplace_back(om("meta", "other"), gen(depth - 1));
        return Term::attributed(std::move(pairs), gen(depth - 1));
      }
      default: {  // error object
        std::vector<Term> args;
        if (pick(2)) args.push_back(gen(depth - 1));
        return Term::error_term(om("aritherror", "overflow"), std::move(args));
      }
    }
  }
};

}  // namespace mbtest

#endif
