#include "mathbridge/oracle.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "mathbridge/error.hpp"

namespace mathbridge {

namespace {

[[noreturn]] void eval_error(const std::string& code, const std::string& msg) {
  throw Error(ErrorClass::Eval, code, msg);
}

}  // namespace

// ---- values -----------------------------------------------------------------

Value Value::rational(Rational r) {
  Value v;
  v.kind = Kind::Rational;
  v.rat = std::move(r);
  return v;
}

Value Value::of_bool(bool b) {
  Value v;
  v.kind = Kind::Boolean;
  v.boolean = b;
  return v;
}

Value Value::set_of(std::vector<Value> members) {
  for (const auto& m : members)
    if (m.kind == Kind::Fun) eval_error("BadSetElement", "function values cannot go in sets");
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  Value v;
  v.kind = Kind::Set;
  v.set = std::move(members);
  return v;
}

Value Value::element(std::string sort, size_t index) {
  Value v;
  v.kind = Kind::Element;
  v.elem_sort = std::move(sort);
  v.elem_index = index;
  return v;
}

Value Value::function(std::shared_ptr<const FunValue> f) {
  Value v;
  v.kind = Kind::Fun;
  v.fun = std::move(f);
  return v;
}

bool Value::operator==(const Value& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::Rational: return rat == o.rat;
    case Kind::Boolean: return boolean == o.boolean;
    case Kind::Set: return set == o.set;
    case Kind::Element: return elem_sort == o.elem_sort && elem_index == o.elem_index;
    case Kind::Fun: return fun == o.fun;
  }
  return false;
}

bool Value::operator<(const Value& o) const {
  if (kind != o.kind) return kind < o.kind;
  switch (kind) {
    case Kind::Rational: return rat < o.rat;
    case Kind::Boolean: return boolean < o.boolean;
    case Kind::Set: return set < o.set;
    case Kind::Element:
      return elem_sort != o.elem_sort ? elem_sort < o.elem_sort : elem_index < o.elem_index;
    case Kind::Fun: eval_error("BadComparison", "function values have no order");
  }
  return false;
}

std::string Value::str() const {
  switch (kind) {
    case Kind::Rational: return rational_str(rat);
    case Kind::Boolean: return boolean ? "true" : "false";
    case Kind::Set: {
      std::string out = "{";
      for (size_t k = 0; k < set.size(); ++k) {
        if (k) out += ", ";
        out += set[k].str();
      }
      return out + "}";
    }
    case Kind::Element: return elem_sort + ":" + std::to_string(elem_index);
    case Kind::Fun: return "<function/" + std::to_string(fun ? fun->arity : 0) + ">";
  }
  return "";
}

// ---- interpretation ------------------------------------------------------------

const std::vector<Value>* Interpretation::carrier(const std::string& sort_name) const {
  auto it = carriers.find(sort_name);
  return it == carriers.end() ? nullptr : &it->second;
}

namespace {

struct InterpLexer {
  const std::string& s;
  size_t i = 0;
  size_t line = 1, col = 1;

  char peek() const { return i < s.size() ? s[i] : '\0'; }
  bool eof() const { return i >= s.size(); }

  char get() {
    char c = s[i++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }

  void skip() {
    for (;;) {
      while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) get();
      if (!eof() && peek() == '#') {
        while (!eof() && peek() != '\n') get();
        continue;
      }
      return;
    }
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw_parse("BadInterpretation", msg, SourcePos{line, col});
  }

  std::string word() {
    skip();
    std::string out;
    while (!eof()) {
      char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '!')
        out.push_back(get());
      else
        break;
    }
    if (out.empty()) fail("expected a name");
    return out;
  }

  bool accept(char c) {
    skip();
    if (!eof() && peek() == c) {
      get();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool accept_arrow() {
    skip();
    if (i + 1 < s.size() && s[i] == '-' && s[i + 1] == '>') {
      get();
      get();
      return true;
    }
    return false;
  }

  Value value() {
    skip();
    if (eof()) fail("expected a value");
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+') {
      std::string num;
      num.push_back(get());
      while (!eof() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '/' ||
                        peek() == '.'))
        num.push_back(get());
      return Value::rational(parse_rational(num));
    }
    std::string w = word();
    if (w == "true") return Value::of_bool(true);
    if (w == "false") return Value::of_bool(false);
    if (accept(':')) {
      std::string idx = word();
      for (char d : idx)
        if (!std::isdigit(static_cast<unsigned char>(d))) fail("expected an element index");
      return Value::element(w, std::stoul(idx));
    }
    fail("unknown value '" + w + "'");
  }
};

}  // namespace

Interpretation parse_interpretation(const std::string& text) {
  Interpretation out;
  InterpLexer lex{text};
  for (;;) {
    lex.skip();
    if (lex.eof()) return out;
    std::string kw = lex.word();
    if (kw == "sort") {
      std::string name = lex.word();
      lex.expect('=');
      lex.skip();
      if (lex.peek() == '{') {
        lex.get();
        std::vector<Value> values;
        if (!lex.accept('}')) {
          do values.push_back(lex.value());
          while (lex.accept(','));
          lex.expect('}');
        }
        if (values.empty()) lex.fail("carriers must be non-empty");
        out.carriers[name] = std::move(values);
      } else {
        std::string count = lex.word();
        size_t n = std::stoul(count);
        if (n == 0) lex.fail("carriers must be non-empty");
        std::vector<Value> values;
        for (size_t k = 0; k < n; ++k) values.push_back(Value::element(name, k));
        out.carriers[name] = std::move(values);
      }
    } else if (kw == "fun") {
      std::string name = lex.word();
      lex.expect('=');
      lex.expect('{');
      std::vector<std::pair<std::vector<Value>, Value>> table;
      if (!lex.accept('}')) {
        do {
          std::vector<Value> args;
          lex.expect('(');
          if (!lex.accept(')')) {
            do args.push_back(lex.value());
            while (lex.accept(','));
            lex.expect(')');
          }
          if (!lex.accept_arrow()) lex.fail("expected '->' in function table");
          table.emplace_back(std::move(args), lex.value());
        } while (lex.accept(','));
        lex.expect('}');
      }
      out.funs[name] = std::move(table);
    } else if (kw == "var") {
      std::string name = lex.word();
      lex.expect('=');
      out.var_env[name] = lex.value();
    } else if (kw == "grid") {
      lex.expect('=');
      std::string n = lex.word();
      out.grid = static_cast<unsigned>(std::stoul(n));
      if (*out.grid == 0) lex.fail("grid resolution must be positive");
    } else if (kw == "default") {
      lex.expect('=');
      out.default_sort = lex.word();
    } else {
      lex.fail("unknown directive '" + kw + "'");
    }
  }
}

// ---- evaluation ------------------------------------------------------------------

namespace {

std::string fun_key(const Symbol& s) {
  return s.origin == SymbolOrigin::SMTTheory ? s.name : s.qualified();
}

struct EvalCtx {
  const Interpretation* interp;
  std::map<std::string, Value> vars;                 // bound variables
  std::map<std::string, Value> defined;              // define-fun closures / constants

  const Interpretation& in() const { return *interp; }
};

Value eval_term(const Term& t, const EvalCtx& ctx);

Rational need_rat(const Value& v, const char* what) {
  if (v.kind != Value::Kind::Rational)
    eval_error("TypeError", std::string(what) + " needs a rational, got " + v.str());
  return v.rat;
}

bool need_bool(const Value& v, const char* what) {
  if (v.kind != Value::Kind::Boolean)
    eval_error("TypeError", std::string(what) + " needs a boolean, got " + v.str());
  return v.boolean;
}

std::vector<Value> need_set(const Value& v, const char* what) {
  if (v.kind != Value::Kind::Set)
    eval_error("TypeError", std::string(what) + " needs a set, got " + v.str());
  return v.set;
}

Value apply_fun(const Value& f, const std::vector<Value>& args, const char* what) {
  if (f.kind != Value::Kind::Fun)
    eval_error("TypeError", std::string(what) + " needs a function, got " + f.str());
  if (f.fun->arity != args.size())
    eval_error("Arity", std::string(what) + ": function expects " +
                            std::to_string(f.fun->arity) + " argument(s)");
  return f.fun->apply(args);
}

const std::vector<Value>& domain_for(const BoundVar& bv, const EvalCtx& ctx) {
  std::string sort_name;
  if (bv.sort) {
    sort_name = bv.sort->name;
  } else if (ctx.in().default_sort) {
    sort_name = *ctx.in().default_sort;
  } else if (ctx.in().carriers.size() == 1) {
    sort_name = ctx.in().carriers.begin()->first;
  } else {
    eval_error("InfiniteDomain",
               "no carrier for unsorted bound variable '" + bv.name + "'");
  }
  const std::vector<Value>* c = ctx.in().carrier(sort_name);
  if (!c) eval_error("InfiniteDomain", "no carrier for sort '" + sort_name + "'");
  return *c;
}

// Enumerates assignments for vars over their domains; returns true if fn asked
// to stop early.
bool for_each_assignment(const std::vector<BoundVar>& vars, size_t k, EvalCtx& ctx,
                         const std::function<bool(EvalCtx&)>& fn) {
  if (k == vars.size()) return fn(ctx);
  const auto& domain = domain_for(vars[k], ctx);
  for (const Value& v : domain) {
    ctx.vars.insert_or_assign(vars[k].name, v);
    if (for_each_assignment(vars, k + 1, ctx, fn)) return true;
  }
  ctx.vars.erase(vars[k].name);
  return false;
}

// For a binder whose condition is "x in S" with S independent of x, the
// condition doubles as the domain; otherwise the variable needs a carrier.
std::optional<std::vector<Value>> membership_domain(const BindNode& b, const EvalCtx& ctx) {
  if (!b.condition || b.vars.size() != 1) return std::nullopt;
  const auto* a = as_apply(*b.condition);
  if (!a || a->args.size() != 2) return std::nullopt;
  const auto* h = as_sym(a->head);
  if (!h || !(h->symbol == syms::set1_in())) return std::nullopt;
  const auto* v = as_var(a->args[0]);
  if (!v || v->name != b.vars[0].name) return std::nullopt;
  if (free_variables(a->args[1]).count(b.vars[0].name)) return std::nullopt;
  return need_set(eval_term(a->args[1], ctx), "binder condition");
}

Value eval_quantifier(const BindNode& b, const EvalCtx& ctx, bool universal) {
  if (b.condition) eval_error("UnsupportedBinder", "quantifier with a condition");
  EvalCtx local = ctx;
  bool verdict = universal;
  for_each_assignment(b.vars, 0, local, [&](EvalCtx& c) {
    bool holds = need_bool(eval_term(b.body, c), "quantifier body");
    if (universal && !holds) {
      verdict = false;
      return true;
    }
    if (!universal && holds) {
      verdict = true;
      return true;
    }
    return false;
  });
  return Value::of_bool(verdict);
}

Value eval_exists_unique(const BindNode& b, const EvalCtx& ctx) {
  if (b.condition) eval_error("UnsupportedBinder", "exists-unique with a condition");
  EvalCtx local = ctx;
  size_t count = 0;
  for_each_assignment(b.vars, 0, local, [&](EvalCtx& c) {
    if (need_bool(eval_term(b.body, c), "quantifier body")) ++count;
    return count > 1;  // early exit once uniqueness is impossible
  });
  return Value::of_bool(count == 1);
}

// Shared scaffolding for the restricted binders (max / argmax / argmaxone):
// enumerate the domain, keep condition-satisfying points with their values.
std::vector<std::pair<Value, Rational>> restricted_points(const BindNode& b,
                                                          const EvalCtx& ctx) {
  if (!b.condition)
    eval_error("ConditionMissing", b.binder.qualified() + " needs a restricting condition");
  if (b.vars.size() != 1)
    eval_error("UnsupportedBinder", b.binder.qualified() + " binds exactly one variable");
  std::vector<Value> domain;
  bool domain_is_condition = false;
  if (auto dom = membership_domain(b, ctx)) {
    domain = std::move(*dom);
    domain_is_condition = true;
  } else {
    domain = domain_for(b.vars[0], ctx);
  }
  std::vector<std::pair<Value, Rational>> points;
  EvalCtx local = ctx;
  for (const Value& v : domain) {
    local.vars.insert_or_assign(b.vars[0].name, v);
    if (!domain_is_condition &&
        !need_bool(eval_term(*b.condition, local), "binder condition"))
      continue;
    points.emplace_back(v, need_rat(eval_term(b.body, local), "binder body"));
  }
  return points;
}

Value builtin_apply(const Symbol& sym, const std::vector<Value>& args, const EvalCtx& ctx);

Value eval_bind(const BindNode& b, const EvalCtx& ctx) {
  const Symbol& s = b.binder;
  if (s == syms::quant1_forall() || s == syms::smt_forall()) return eval_quantifier(b, ctx, true);
  if (s == syms::quant1_exists() || s == syms::smt_exists())
    return eval_quantifier(b, ctx, false);
  if (s == syms::quant2_exists_unique()) return eval_exists_unique(b, ctx);
  if (s == syms::fns1_lambda()) {
    if (b.condition) eval_error("UnsupportedBinder", "lambda with a condition");
    auto fv = std::make_shared<FunValue>();
    fv->arity = b.vars.size();
    EvalCtx captured = ctx;
    std::vector<std::string> names;
    for (const auto& bv : b.vars) names.push_back(bv.name);
    Term body = b.body;
    fv->apply = [captured, names, body](const std::vector<Value>& args) {
      EvalCtx inner = captured;
      for (size_t k = 0; k < names.size(); ++k) inner.vars.insert_or_assign(names[k], args[k]);
      return eval_term(body, inner);
    };
    return Value::function(std::move(fv));
  }
  if (s == syms::minmax2_max()) {
    auto points = restricted_points(b, ctx);
    if (points.empty()) eval_error("EmptyMax", "maximum over an empty restriction");
    Rational best = points[0].second;
    for (const auto& [v, r] : points) best = std::max(best, r);
    return Value::rational(best);
  }
  if (s == syms::minmax2_argmax()) {
    auto points = restricted_points(b, ctx);
    if (points.empty()) return Value::set_of({});
    Rational best = points[0].second;
    for (const auto& [v, r] : points) best = std::max(best, r);
    std::vector<Value> winners;
    for (const auto& [v, r] : points)
      if (r == best) winners.push_back(v);
    return Value::set_of(std::move(winners));
  }
  if (s == syms::minmax2_argmaxone()) {
    auto points = restricted_points(b, ctx);
    if (points.empty()) eval_error("EmptyMax", "argmaxone over an empty restriction");
    // deterministic refinement: first maximizer in enumeration order
    size_t best = 0;
    for (size_t k = 1; k < points.size(); ++k)
      if (points[k].second > points[best].second) best = k;
    return points[best].first;
  }
  eval_error("UnsupportedBinder", "no evaluation rule for binder " + s.qualified());
}

Value table_lookup(const Symbol& sym, const std::vector<Value>& args, const EvalCtx& ctx) {
  std::string key = fun_key(sym);
  auto it = ctx.in().funs.find(key);
  if (it == ctx.in().funs.end()) {
    if (auto d = ctx.defined.find(key); d != ctx.defined.end())
      return args.empty() && d->second.kind != Value::Kind::Fun
                 ? d->second
                 : apply_fun(d->second, args, key.c_str());
    eval_error("NoInterpretation", "no interpretation for symbol '" + key + "'");
  }
  for (const auto& [in, out] : it->second)
    if (in == args) return out;
  std::string got = "(";
  for (size_t k = 0; k < args.size(); ++k) got += (k ? "," : "") + args[k].str();
  eval_error("IncompleteTable", "function table for '" + key + "' has no entry for " + got + ")");
}

Value builtin_apply(const Symbol& sym, const std::vector<Value>& args, const EvalCtx& ctx) {
  const std::string& cd = sym.cd;
  const std::string& name = sym.name;
  bool smt = sym.origin == SymbolOrigin::SMTTheory;

  auto nary_sum = [&](bool product) {
    Rational acc = product ? 1 : 0;
    for (const auto& a : args) {
      Rational r = need_rat(a, name.c_str());
      if (product)
        acc *= r;
      else
        acc += r;
    }
    return Value::rational(acc);
  };

  // arith2.times is deliberately not built in: the commutativity fixtures
  // interpret it with explicit tables.
  if ((smt && name == "+") || (cd == "arith1" && name == "plus")) return nary_sum(false);
  if ((smt && name == "*") || (cd == "arith1" && name == "times")) return nary_sum(true);
  if ((smt && name == "-") || (cd == "arith1" && name == "minus") ||
      (cd == "arith1" && name == "unary_minus")) {
    if (args.size() == 1) return Value::rational(-need_rat(args[0], "negation"));
    Rational acc = need_rat(args[0], "subtraction");
    for (size_t k = 1; k < args.size(); ++k) acc -= need_rat(args[k], "subtraction");
    return Value::rational(acc);
  }
  if ((smt && name == "/") || (cd == "arith1" && name == "divide")) {
    if (args.size() != 2) eval_error("Arity", "division takes two arguments");
    Rational d = need_rat(args[1], "division");
    if (d == 0) eval_error("DivisionByZero", "division by zero");
    return Value::rational(need_rat(args[0], "division") / d);
  }
  if ((smt && name == "=") || (cd == "relation1" && name == "eq")) {
    for (size_t k = 1; k < args.size(); ++k)
      if (!(args[0] == args[k])) return Value::of_bool(false);
    return Value::of_bool(true);
  }
  if ((smt && name == "distinct") || (cd == "relation1" && name == "neq")) {
    for (size_t i = 0; i < args.size(); ++i)
      for (size_t j = i + 1; j < args.size(); ++j)
        if (args[i] == args[j]) return Value::of_bool(false);
    return Value::of_bool(true);
  }
  if ((smt && name == "<") || (cd == "relation1" && name == "lt"))
    return Value::of_bool(need_rat(args[0], "<") < need_rat(args[1], "<"));
  if ((smt && name == "<=") || (cd == "relation1" && name == "leq"))
    return Value::of_bool(need_rat(args[0], "<=") <= need_rat(args[1], "<="));
  if (smt && name == ">") return Value::of_bool(need_rat(args[0], ">") > need_rat(args[1], ">"));
  if (smt && name == ">=")
    return Value::of_bool(need_rat(args[0], ">=") >= need_rat(args[1], ">="));
  if ((smt && name == "and") || (cd == "logic1" && name == "and")) {
    for (const auto& a : args)
      if (!need_bool(a, "and")) return Value::of_bool(false);
    return Value::of_bool(true);
  }
  if ((smt && name == "or") || (cd == "logic1" && name == "or")) {
    for (const auto& a : args)
      if (need_bool(a, "or")) return Value::of_bool(true);
    return Value::of_bool(false);
  }
  if ((smt && name == "not") || (cd == "logic1" && name == "not"))
    return Value::of_bool(!need_bool(args.at(0), "not"));
  if ((smt && name == "=>") || (cd == "logic1" && name == "implies")) {
    // right-associative: a => b => c is a => (b => c)
    bool acc = need_bool(args.back(), "implies");
    for (size_t k = args.size() - 1; k-- > 0;)
      acc = !need_bool(args[k], "implies") || acc;
    return Value::of_bool(acc);
  }
  if (smt && name == "ite")
    return need_bool(args.at(0), "ite") ? args.at(1) : args.at(2);
  if (cd == "set1" && name == "in") {
    auto members = need_set(args.at(1), "in");
    for (const auto& m : members)
      if (m == args[0]) return Value::of_bool(true);
    return Value::of_bool(false);
  }
  if (cd == "set1" && name == "map") {
    auto members = need_set(args.at(1), "map");
    std::vector<Value> out;
    out.reserve(members.size());
    for (const auto& m : members) out.push_back(apply_fun(args[0], {m}, "map"));
    return Value::set_of(std::move(out));
  }
  if (cd == "set1" && name == "suchthat") {
    auto members = need_set(args.at(0), "suchthat");
    std::vector<Value> out;
    for (const auto& m : members)
      if (need_bool(apply_fun(args.at(1), {m}, "suchthat"), "suchthat predicate"))
        out.push_back(m);
    return Value::set_of(std::move(out));
  }
  if (cd == "minmax1" && (name == "max" || name == "min")) {
    auto members = need_set(args.at(0), name.c_str());
    if (members.empty())
      eval_error("EmptyMax", name + " of the empty set");
    Rational best = need_rat(members[0], name.c_str());
    for (const auto& m : members) {
      Rational r = need_rat(m, name.c_str());
      best = name == "max" ? std::max(best, r) : std::min(best, r);
    }
    return Value::rational(best);
  }
  if (cd == "interval1" && name == "interval_cc") {
    Rational lo = need_rat(args.at(0), "interval"), hi = need_rat(args.at(1), "interval");
    if (!ctx.in().grid)
      eval_error("InfiniteDomain",
                 "interval_cc needs a grid resolution in the interpretation");
    unsigned n = *ctx.in().grid;
    std::vector<Value> points;
    if (lo == hi) {
      points.push_back(Value::rational(lo));
    } else if (lo < hi) {
      for (unsigned k = 0; k <= n; ++k)
        points.push_back(Value::rational(lo + (hi - lo) * Rational(k) / Rational(n)));
    }
    return Value::set_of(std::move(points));
  }
  return table_lookup(sym, args, ctx);
}

bool is_builtin_symbol(const Symbol& sym) {
  if (sym.origin == SymbolOrigin::SMTTheory) {
    static const std::set<std::string> tokens = {"+", "-", "*", "/", "=", "distinct", "<",
                                                 "<=", ">", ">=", "and", "or", "not", "=>",
                                                 "ite"};
    return tokens.count(sym.name) > 0;
  }
  const std::string& cd = sym.cd;
  if (cd == "arith1" || cd == "relation1" || cd == "logic1") return true;
  if (cd == "set1" && (sym.name == "in" || sym.name == "map" || sym.name == "suchthat"))
    return true;
  if (cd == "minmax1" || cd == "interval1") return true;
  return false;
}

Value eval_atom_symbol(const Symbol& sym, const EvalCtx& ctx) {
  if (sym == syms::smt_true() || sym == syms::logic1_true()) return Value::of_bool(true);
  if (sym == syms::smt_false() || sym == syms::logic1_false()) return Value::of_bool(false);
  if (sym == syms::alg1_one()) return Value::rational(1);
  if (sym == syms::alg1_zero()) return Value::rational(0);
  // declared 0-ary constants behave like variables under an assignment
  if (sym.origin == SymbolOrigin::SMTTheory) {
    if (auto it = ctx.vars.find(sym.name); it != ctx.vars.end()) return it->second;
    if (auto it = ctx.in().var_env.find(sym.name); it != ctx.in().var_env.end())
      return it->second;
  }
  return table_lookup(sym, {}, ctx);
}

Value eval_term(const Term& t, const EvalCtx& ctx) {
  if (const auto* l = as_lit(t)) {
    switch (l->value.kind) {
      case LiteralKind::Integer:
      case LiteralKind::Numeral:
        return Value::rational(Rational(BigInt(l->value.text)));
      case LiteralKind::Decimal:
        return Value::rational(parse_rational(l->value.text));
      default:
        eval_error("TypeError", "literal kind has no finite-domain value");
    }
  }
  if (const auto* v = as_var(t)) {
    if (auto it = ctx.vars.find(v->name); it != ctx.vars.end()) return it->second;
    if (auto it = ctx.in().var_env.find(v->name); it != ctx.in().var_env.end())
      return it->second;
    eval_error("UnboundVariable", "variable '" + v->name + "' has no value");
  }
  if (const auto* s = as_sym(t)) return eval_atom_symbol(s->symbol, ctx);
  if (const auto* at = as_attr(t)) return eval_term(at->base, ctx);  // transparent
  if (const auto* b = as_bind(t)) return eval_bind(*b, ctx);
  if (const auto* a = as_apply(t)) {
    std::vector<Value> args;
    args.reserve(a->args.size());
    for (const auto& x : a->args) args.push_back(eval_term(x, ctx));
    if (const auto* hs = as_sym(a->head)) {
      if (is_builtin_symbol(hs->symbol)) return builtin_apply(hs->symbol, args, ctx);
      return table_lookup(hs->symbol, args, ctx);
    }
    return apply_fun(eval_term(a->head, ctx), args, "application");
  }
  eval_error("TypeError", "term cannot be evaluated (error or foreign object)");
}

}  // namespace

Value eval(const Term& t, const Interpretation& interp) {
  EvalCtx ctx{&interp, {}, {}};
  return eval_term(t, ctx);
}

// ---- scripts ---------------------------------------------------------------------

Term value_to_term(const Value& v) {
  if (v.kind == Value::Kind::Boolean)
    return Term::sym(v.boolean ? syms::smt_true() : syms::smt_false());
  if (v.kind != Value::Kind::Rational)
    eval_error("NonCanonicalModelValue", "model values must be rationals or booleans, got " +
                                             v.str());
  const Rational& r = v.rat;
  bool neg = r < 0;
  Rational a = neg ? -r : r;
  Term core;
  if (is_integer(a)) {
    core = Term::lit(Literal::numeral(numerator(a).str()));
  } else {
    core = Term::apply(Term::sym(syms::smt("/")),
                       {Term::lit(Literal::numeral(numerator(a).str())),
                        Term::lit(Literal::numeral(denominator(a).str()))});
  }
  if (neg) return Term::apply(Term::sym(syms::smt("-")), {core});
  return core;
}

SolverResult eval_script(const Script& script, const Interpretation& interp) {
  struct SearchVar {
    std::string name;
    std::string sort;
  };
  std::vector<SearchVar> search;
  std::vector<Term> asserts;
  std::vector<std::pair<bool, Term>> goals;  // true = maximize
  std::vector<std::vector<Term>> value_queries;
  bool want_model = false;
  bool checked = false;
  EvalCtx base{&interp, {}, {}};

  for (const auto& cmd : script.commands) {
    switch (cmd.kind) {
      case Command::Kind::DeclareSort:
        break;  // carriers come from the interpretation
      case Command::Kind::DeclareFun:
        if (cmd.arg_sorts.empty()) {
          search.push_back(SearchVar{cmd.name, cmd.result_sort->name});
        }
        // n-ary uninterpreted functions need a table in the interpretation
        break;
      case Command::Kind::DefineFun: {
        if (cmd.params.empty()) {
          base.defined[cmd.name] = eval_term(cmd.term, base);
        } else {
          auto fv = std::make_shared<FunValue>();
          fv->arity = cmd.params.size();
          std::vector<std::string> names;
          for (const auto& p : cmd.params) names.push_back(p.name);
          Term body = cmd.term;
          EvalCtx captured = base;
          fv->apply = [captured, names, body](const std::vector<Value>& args) {
            EvalCtx inner = captured;
            for (size_t k = 0; k < names.size(); ++k)
              inner.vars.insert_or_assign(names[k], args[k]);
            return eval_term(body, inner);
          };
          base.defined[cmd.name] = Value::function(std::move(fv));
        }
        break;
      }
      case Command::Kind::Assert:
        asserts.push_back(cmd.term);
        break;
      case Command::Kind::Maximize:
        goals.emplace_back(true, cmd.term);
        break;
      case Command::Kind::Minimize:
        goals.emplace_back(false, cmd.term);
        break;
      case Command::Kind::CheckSat:
        checked = true;
        break;
      case Command::Kind::GetValue:
        if (!checked)
          eval_error("NoGoalBeforeGetValue", "get-value must come after check-sat");
        value_queries.push_back(cmd.terms);
        break;
      case Command::Kind::GetModel:
        if (!checked)
          eval_error("NoGoalBeforeGetValue", "get-model must come after check-sat");
        want_model = true;
        break;
      case Command::Kind::SetLogic:
      case Command::Kind::Exit:
      case Command::Kind::Passthrough:
        break;
    }
  }
  if (!checked) return SolverResult::unknown();

  // Fetch carriers for all search variables up front.
  std::vector<const std::vector<Value>*> domains;
  for (const auto& sv : search) {
    const std::vector<Value>* c = interp.carrier(sv.sort);
    if (!c)
      eval_error("InfiniteDomain", "no carrier for sort '" + sv.sort + "' of search variable '" +
                                       sv.name + "'");
    domains.push_back(c);
  }

  std::optional<std::map<std::string, Value>> best_assignment;
  std::vector<Rational> best_scores;

  std::vector<size_t> idx(search.size(), 0);
  auto assign = [&](EvalCtx& ctx) {
    for (size_t k = 0; k < search.size(); ++k)
      ctx.vars.insert_or_assign(search[k].name, (*domains[k])[idx[k]]);
  };

  for (;;) {
    EvalCtx ctx = base;
    assign(ctx);
    bool ok = true;
    for (const auto& a : asserts) {
      if (!need_bool(eval_term(a, ctx), "assertion")) {
        ok = false;
        break;
      }
    }
    if (ok) {
      std::vector<Rational> scores;
      scores.reserve(goals.size());
      for (const auto& [maximize, objective] : goals) {
        Rational r = need_rat(eval_term(objective, ctx), "optimization goal");
        scores.push_back(maximize ? r : -r);  // normalize: larger is better
      }
      bool better = !best_assignment.has_value();
      if (!better) {
        for (size_t g = 0; g < scores.size(); ++g) {
          if (scores[g] > best_scores[g]) {
            better = true;
            break;
          }
          if (scores[g] < best_scores[g]) break;
        }
      }
      if (better) {
        best_scores = scores;
        std::map<std::string, Value> snapshot;
        for (size_t k = 0; k < search.size(); ++k)
          snapshot[search[k].name] = (*domains[k])[idx[k]];
        best_assignment = std::move(snapshot);
      }
      if (goals.empty()) break;  // plain satisfiability: first hit wins
    }
    // advance the product counter
    size_t k = 0;
    for (; k < idx.size(); ++k) {
      if (++idx[k] < domains[k]->size()) break;
      idx[k] = 0;
    }
    if (k == idx.size()) break;
    if (search.empty()) break;
  }

  if (!best_assignment) return SolverResult::unsat();

  EvalCtx winner = base;
  for (const auto& [name, v] : *best_assignment) winner.vars.insert_or_assign(name, v);

  std::vector<std::pair<Term, Term>> model;
  auto add_binding = [&](const Term& lhs) {
    for (const auto& [l, r] : model)
      if (l == lhs) return;
    model.emplace_back(lhs, value_to_term(eval_term(lhs, winner)));
  };
  if (!value_queries.empty() || want_model) {
    for (const auto& q : value_queries)
      for (const auto& t : q) add_binding(t);
    if (want_model)
      for (const auto& sv : search) add_binding(Term::sym(syms::smt(sv.name)));
  } else {
    for (const auto& sv : search) add_binding(Term::sym(syms::smt(sv.name)));
  }
  return SolverResult::sat(std::move(model));
}

PredicateStream::PredicateStream(size_t carrier_size, size_t bound) : n_(carrier_size) {
  if (carrier_size > bound)
    throw Error(ErrorClass::Eval, "BoundExceeded",
                "predicate enumeration over " + std::to_string(carrier_size) +
                    " elements exceeds the bound " + std::to_string(bound));
}

std::optional<std::vector<bool>> PredicateStream::next() {
  if (counter_ >= (size_t{1} << n_)) return std::nullopt;
  std::vector<bool> table(n_);
  for (size_t k = 0; k < n_; ++k) table[k] = (counter_ >> k) & 1;
  ++counter_;
  return table;
}

}  // namespace mathbridge
