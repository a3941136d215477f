#include "mathbridge/translate.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "mathbridge/error.hpp"
#include "mathbridge/popcorn.hpp"

namespace mathbridge {

namespace {

[[noreturn]] void xlate_error(const std::string& code, const std::string& msg) {
  throw Error(ErrorClass::Translate, code, msg);
}

bool times_pair(const Symbol& a, const Symbol& b) {
  auto is_times = [](const Symbol& s) {
    return s == syms::arith1_times() || s == syms::arith2_times();
  };
  return is_times(a) && is_times(b);
}

}  // namespace

void SymbolMap::add(const Symbol& sym, const std::string& token) {
  if (auto it = reverse.find(token); it != reverse.end() && !(it->second == sym) &&
                                     !times_pair(it->second, sym))
    xlate_error("NonInjectiveMap", "token '" + token + "' already maps to " +
                                       it->second.qualified());
  forward[sym] = token;
  if (auto it = reverse.find(token); it == reverse.end() || !times_pair(it->second, sym))
    reverse[token] = sym;
}

void SymbolMap::add_literal(const Symbol& sym, Literal value) {
  literal_forward.insert_or_assign(sym, std::move(value));
}

SymbolMap SymbolMap::standard() {
  SymbolMap m;
  m.add(syms::arith1_plus(), "+");
  m.add(syms::arith1_times(), "*");
  m.add(syms::arith2_times(), "*");  // reverse direction settles on arith1 by default
  m.reverse["*"] = syms::arith1_times();
  m.add(syms::arith1_minus(), "-");
  m.add(syms::arith1_divide(), "/");
  m.add(syms::relation1_eq(), "=");
  m.add(syms::relation1_neq(), "distinct");
  m.add(syms::relation1_lt(), "<");
  m.add(syms::relation1_leq(), "<=");
  m.add(syms::quant1_forall(), "forall");
  m.add(syms::quant1_exists(), "exists");
  m.add(syms::logic1_and(), "and");
  m.add(syms::logic1_or(), "or");
  m.add(syms::logic1_not(), "not");
  m.add(syms::logic1_implies(), "=>");
  m.add(syms::logic1_true(), "true");
  m.add(syms::logic1_false(), "false");
  m.add_literal(syms::alg1_one(), Literal::numeral("1"));
  m.add_literal(syms::alg1_zero(), Literal::numeral("0"));
  return m;
}

SymbolMap SymbolMap::parse(const std::string& text) {
  SymbolMap m = SymbolMap::standard();
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  auto trim = [](std::string s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw_parse("BadSymbolMap", "expected 'cd.name = token'", SourcePos{lineno, 1});
    std::string lhs = trim(t.substr(0, eq));
    std::string rhs = trim(t.substr(eq + 1));
    auto dot = lhs.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == lhs.size())
      throw_parse("BadSymbolMap", "left side must be cd.name", SourcePos{lineno, 1});
    if (rhs.empty())
      throw_parse("BadSymbolMap", "right side must be a token", SourcePos{lineno, 1});
    Symbol sym = syms::om(lhs.substr(0, dot), lhs.substr(dot + 1));
    bool numeric = std::isdigit(static_cast<unsigned char>(rhs[0]));
    if (numeric) {
      if (rhs.find('.') != std::string::npos)
        m.add_literal(sym, Literal::decimal(rhs));
      else
        m.add_literal(sym, Literal::numeral(rhs));
    } else {
      m.add(sym, rhs);
    }
  }
  return m;
}

// ---- OpenMath -> SMT-LIB --------------------------------------------------------

namespace {

struct OmToSmt {
  const SymbolMap& map;
  const SignatureTable& table;

  Sort sort_for(const BoundVar& bv) {
    if (bv.sort) return *bv.sort;
    if (auto it = table.var_sorts.find(bv.name); it != table.var_sorts.end()) return it->second;
    if (auto it = table.profile.var_sorts.find(bv.name); it != table.profile.var_sorts.end())
      return it->second;
    xlate_error("UnsortableVariable",
                "bound variable '" + bv.name + "' has no sort for the SMT-LIB side");
  }

  Term symbol(const Symbol& s) {
    if (s.origin == SymbolOrigin::Extension)
      xlate_error("UnloweredExtension",
                  "extension symbol " + s.qualified() + " must be desugared first");
    if (s.origin == SymbolOrigin::SMTTheory) return Term::sym(s);
    if (auto it = map.literal_forward.find(s); it != map.literal_forward.end())
      return Term::lit(it->second);
    if (auto it = map.forward.find(s); it != map.forward.end())
      return Term::sym(syms::smt(it->second));
    return Term::sym(s);  // unmapped: the printer mangles it to |cd.name|
  }

  Term literal(const Literal& l) {
    switch (l.kind) {
      case LiteralKind::Integer:
        if (!l.text.empty() && l.text[0] == '-')
          return Term::apply(Term::sym(syms::smt("-")),
                             {Term::lit(Literal::numeral(l.text.substr(1)))});
        return Term::lit(Literal::numeral(l.text));
      case LiteralKind::Float64: {
        double v = l.f64;
        if (std::signbit(v) && !(v != v)) {
          Literal mag = Literal::decimal(float_to_smt_decimal(-v));
          return Term::apply(Term::sym(syms::smt("-")), {Term::lit(std::move(mag))});
        }
        return Term::lit(Literal::decimal(float_to_smt_decimal(v)));
      }
      case LiteralKind::ByteArray:
        xlate_error("Untranslatable", "byte arrays have no SMT-LIB counterpart");
      default:
        return Term::lit(l);  // String and SMT-side kinds pass through
    }
  }

  Term operator()(const Term& t) {
    if (const auto* v = as_var(t)) return t;
    if (const auto* s = as_sym(t)) return symbol(s->symbol);
    if (const auto* l = as_lit(t)) return literal(l->value);
    if (const auto* at = as_attr(t)) return (*this)(at->base);  // no SMT channel
    if (const auto* a = as_apply(t)) {
      const auto* h = as_sym(a->head);
      if (h && h->symbol == syms::arith1_unary_minus()) {
        if (a->args.size() != 1)
          xlate_error("Untranslatable", "unary_minus takes one argument");
        return Term::apply(Term::sym(syms::smt("-")), {(*this)(a->args[0])});
      }
      std::vector<Term> args;
      args.reserve(a->args.size());
      for (const auto& x : a->args) args.push_back((*this)(x));
      return Term::apply((*this)(a->head), std::move(args));
    }
    if (const auto* b = as_bind(t)) {
      const Symbol& binder = b->binder;
      if (binder.origin == SymbolOrigin::Extension)
        xlate_error("UnloweredExtension",
                    "extension binder " + binder.qualified() + " must be desugared first");
      if (b->condition)
        xlate_error("UnmappedBinder", "restricted binders have no SMT-LIB counterpart");
      Symbol target;
      if (binder == syms::quant1_forall() || binder == syms::smt_forall())
        target = syms::smt_forall();
      else if (binder == syms::quant1_exists() || binder == syms::smt_exists())
        target = syms::smt_exists();
      else
        xlate_error("UnmappedBinder",
                    "binder " + binder.qualified() + " has no SMT-LIB counterpart");
      std::vector<BoundVar> vars;
      vars.reserve(b->vars.size());
      for (const auto& bv : b->vars) vars.push_back(BoundVar{bv.name, sort_for(bv)});
      return Term::bind(target, std::move(vars), (*this)(b->body));
    }
    xlate_error("Untranslatable", "errors and foreign objects have no SMT-LIB counterpart");
  }
};

}  // namespace

Term om_to_smt(const Term& t, const SymbolMap& map, const SignatureTable& table) {
  OmToSmt tr{map, table};
  return tr(t);
}

// ---- SMT-LIB -> OpenMath --------------------------------------------------------

namespace {

bool has_whitespace(const std::string& s) {
  for (char c : s)
    if (std::isspace(static_cast<unsigned char>(c))) return true;
  return false;
}

struct SmtToOm {
  const SymbolMap& map;
  const TranslateOptions& options;

  Symbol demangle_or_error(const std::string& token) {
    auto dot = token.find('.');
    if (dot != std::string::npos && dot > 0 && dot + 1 < token.size()) {
      std::string cd = token.substr(0, dot);
      std::string name = token.substr(dot + 1);
      if (!has_whitespace(cd) && !has_whitespace(name)) return syms::om(cd, name);
    }
    if (has_whitespace(token) || token.empty())
      xlate_error("IrreversibleMangling",
                  "quoted symbol '" + token + "' does not match the |cd.name| pattern");
    return syms::smt(token);  // plain theory token: keep it under the smt tag
  }

  Symbol symbol(const Symbol& s, size_t arity, bool applied) {
    if (s.origin != SymbolOrigin::SMTTheory) return s;  // already OpenMath-side
    const std::string& tok = s.name;
    if (tok == "-" && applied)
      return arity == 1 ? syms::arith1_unary_minus() : syms::arith1_minus();
    if (tok == "*")
      return options.times_cd == TranslateOptions::TimesCd::Arith2 ? syms::arith2_times()
                                                                   : syms::arith1_times();
    if (auto it = map.reverse.find(tok); it != map.reverse.end()) return it->second;
    return demangle_or_error(tok);
  }

  std::string literal_sort(LiteralKind kind) {
    auto it = options.profile.literal_sorts.find(kind);
    return it == options.profile.literal_sorts.end() ? "" : it->second;
  }

  Term literal(const Literal& l) {
    switch (l.kind) {
      case LiteralKind::Numeral: {
        std::string target = literal_sort(LiteralKind::Numeral);
        if (target != "Int")
          xlate_error("NonArithmeticProfile",
                      "numerals translate only under an Int profile, not '" + target + "'");
        return Term::lit(Literal::integer(l.text));
      }
      case LiteralKind::Decimal: {
        std::string target = literal_sort(LiteralKind::Decimal);
        if (target != "Real")
          xlate_error("NonArithmeticProfile",
                      "decimals translate only under a Real profile, not '" + target + "'");
        return Term::lit(Literal::float64(std::strtod(l.text.c_str(), nullptr)));
      }
      case LiteralKind::Hexadecimal:
      case LiteralKind::Binary:
        xlate_error("NonArithmeticProfile",
                    "hexadecimal/binary constants are theory-local and have no OpenMath "
                    "reading here");
      default:
        return Term::lit(l);  // String and OpenMath-side kinds pass through
    }
  }

  Term operator()(const Term& t) {
    if (as_var(t)) return t;
    if (const auto* s = as_sym(t)) return Term::sym(symbol(s->symbol, 0, false));
    if (const auto* l = as_lit(t)) return literal(l->value);
    if (const auto* at = as_attr(t)) {
      std::vector<std::pair<Symbol, Term>> pairs;
      for (const auto& [k, v] : at->pairs) pairs.emplace_back(k, (*this)(v));
      return Term::attributed(std::move(pairs), (*this)(at->base));
    }
    if (const auto* a = as_apply(t)) {
      // (- numeral) is the SMT idiom for a negative integer
      if (const auto* h = as_sym(a->head);
          h && h->symbol.origin == SymbolOrigin::SMTTheory && h->symbol.name == "-" &&
          a->args.size() == 1) {
        if (const auto* l = as_lit(a->args[0]); l && l->value.kind == LiteralKind::Numeral)
          return Term::lit(Literal::integer("-" + l->value.text));
      }
      std::vector<Term> args;
      args.reserve(a->args.size());
      for (const auto& x : a->args) args.push_back((*this)(x));
      if (const auto* h = as_sym(a->head))
        return Term::apply(Term::sym(symbol(h->symbol, args.size(), true)), std::move(args));
      return Term::apply((*this)(a->head), std::move(args));
    }
    if (const auto* b = as_bind(t)) {
      Symbol binder = b->binder;
      if (binder == syms::smt_forall())
        binder = syms::quant1_forall();
      else if (binder == syms::smt_exists())
        binder = syms::quant1_exists();
      Term body = (*this)(b->body);
      if (b->condition)
        return Term::bind_conditional(binder, b->vars, std::move(body),
                                      (*this)(*b->condition));
      return Term::bind(binder, b->vars, std::move(body));
    }
    if (const auto* e = as_error(t)) {
      std::vector<Term> args;
      for (const auto& x : e->args) args.push_back((*this)(x));
      return Term::error_term(e->symbol, std::move(args));
    }
    return t;  // Foreign
  }
};

}  // namespace

Term smt_to_om(const Term& t, const SymbolMap& map, const TranslateOptions& options) {
  SmtToOm tr{map, options};
  return tr(t);
}

RoundtripReport roundtrip_check(const Term& t, const SymbolMap& map,
                                const SignatureTable& table, const TranslateOptions& options) {
  auto describe = [](const Term& term) -> std::string {
    try {
      return print_popcorn(term, PopcornConfig{});
    } catch (const Error&) {
      return "<unprintable term>";
    }
  };
  try {
    Term smt = om_to_smt(t, map, table);
    Term back = smt_to_om(smt, map, options);
    Term lhs = strip_attributions(t);
    Term rhs = strip_attributions(back);
    if (alpha_equal(lhs, rhs)) return {true, ""};
    return {false, "round-trip changed the term: " + describe(lhs) + " vs " + describe(rhs)};
  } catch (const Error& e) {
    return {false, e.code() + ": " + std::string(e.what())};
  }
}

// ---- argmaxone ---------------------------------------------------------------------

Script argmaxone_to_script(const Term& t, const SymbolMap& map, const SignatureTable& table,
                           const TranslateOptions& options) {
  const auto* b = as_bind(t);
  if (!b || !(b->binder == syms::minmax2_argmaxone()))
    throw Error(ErrorClass::Extension, "NotArgmaxForm",
                "expected a minmax2.argmaxone binder");
  if (b->vars.size() != 1)
    throw Error(ErrorClass::Extension, "NotArgmaxForm",
                "argmaxone takes exactly one bound variable");
  if (!b->condition)
    throw Error(ErrorClass::Extension, "ConditionMissing",
                "argmaxone needs a restricting condition");
  const BoundVar& x = b->vars[0];
  Sort sort = x.sort ? *x.sort : Sort::simple("Real");

  // The membership condition becomes range constraints; an interval gives the
  // OptiMathSAT-style bounds, anything else must already be a predicate.
  std::vector<Term> constraints;
  const auto* cond_apply = as_apply(*b->condition);
  const auto* cond_head = cond_apply ? as_sym(cond_apply->head) : nullptr;
  bool lowered_interval = false;
  if (cond_head && cond_head->symbol == syms::set1_in() && cond_apply->args.size() == 2) {
    const auto* set_apply = as_apply(cond_apply->args[1]);
    const auto* set_head = set_apply ? as_sym(set_apply->head) : nullptr;
    if (set_head && set_head->symbol == syms::interval1_interval_cc() &&
        set_apply->args.size() == 2) {
      Term lo = om_to_smt(set_apply->args[0], map, table);
      Term hi = om_to_smt(set_apply->args[1], map, table);
      Term xv = Term::var(x.name);
      constraints.push_back(Term::apply(Term::sym(syms::smt("<=")), {lo, xv}));
      constraints.push_back(Term::apply(Term::sym(syms::smt("<=")), {xv, hi}));
      lowered_interval = true;
    }
  }
  if (!lowered_interval)
    throw Error(ErrorClass::Extension, "NotArgmaxForm",
                "argmaxone scripts need an interval membership condition");

  OptimizationGoal goal;
  goal.direction = OptimizationGoal::Direction::Maximize;
  goal.objective = om_to_smt(b->body, map, table);
  goal.witness_vars.emplace_back(x.name, sort);

  // Numerals are theory-local: in this goal they read at the witness sort, so
  // (<= 0 x) checks against a Real-sorted x.
  SignatureTable scoped = table;
  scoped.profile.literal_sorts[LiteralKind::Numeral] = sort.name;
  scoped.profile.literal_sorts[LiteralKind::Integer] = sort.name;
  return lower_argmaxone_to_script(goal, constraints, scoped);
}

}  // namespace mathbridge
