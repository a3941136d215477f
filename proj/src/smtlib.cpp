#include "mathbridge/smtlib.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>

#include "mathbridge/error.hpp"
#include "mathbridge/rational.hpp"

namespace mathbridge {

namespace {

bool simple_symbol_char(char c) {
  if (std::isalnum(static_cast<unsigned char>(c))) return true;
  return std::strchr("~!@$%^&*_-+=<>.?/", c) != nullptr;
}

bool needs_quoting(const std::string& token) {
  if (token.empty()) return true;
  if (std::isdigit(static_cast<unsigned char>(token[0]))) return true;
  for (char c : token)
    if (!simple_symbol_char(c)) return true;
  return false;
}

struct SexprLexer {
  const std::string& s;
  size_t i = 0;
  size_t line = 1, col = 1;

  explicit SexprLexer(const std::string& text) : s(text) {}

  char peek(size_t ahead = 0) const { return i + ahead < s.size() ? s[i + ahead] : '\0'; }
  bool eof() const { return i >= s.size(); }
  SourcePos pos() const { return SourcePos{line, col}; }

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

  [[noreturn]] void fail(const std::string& code, const std::string& msg) const {
    throw_parse(code, msg, pos());
  }

  void skip_trivia() {
    for (;;) {
      while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) get();
      if (!eof() && peek() == ';') {
        while (!eof() && peek() != '\n') get();
        continue;
      }
      return;
    }
  }

  SExpr read() {
    skip_trivia();
    if (eof()) fail("UnbalancedParen", "unexpected end of input");
    SourcePos start = pos();
    char c = peek();
    if (c == '(') {
      get();
      SExpr out;
      out.kind = SExpr::Kind::List;
      out.pos = start;
      for (;;) {
        skip_trivia();
        if (eof()) fail("UnbalancedParen", "missing ')'");
        if (peek() == ')') {
          get();
          return out;
        }
        out.items.push_back(read());
      }
    }
    if (c == ')') fail("UnbalancedParen", "unmatched ')'");
    if (c == '"') {
      get();
      std::string content;
      for (;;) {
        if (eof()) fail("BadToken", "unterminated string literal");
        char d = get();
        if (d == '"') {
          if (peek() == '"') {
            get();
            content.push_back('"');
            continue;
          }
          break;
        }
        content.push_back(d);
      }
      SExpr out = SExpr::atom(SExpr::Kind::String, content);
      out.pos = start;
      return out;
    }
    if (c == '|') {
      get();
      std::string content;
      for (;;) {
        if (eof()) fail("BadToken", "unterminated quoted symbol");
        char d = get();
        if (d == '|') break;
        if (d == '\\') fail("BadToken", "backslash is not allowed in quoted symbols");
        content.push_back(d);
      }
      SExpr out = SExpr::atom(SExpr::Kind::SymbolToken, content);
      out.quoted = true;
      out.pos = start;
      return out;
    }
    if (c == '#') {
      get();
      char k = eof() ? '\0' : get();
      std::string spelling = "#";
      spelling.push_back(k);
      if (k == 'x') {
        if (!std::isxdigit(static_cast<unsigned char>(peek())))
          fail("BadToken", "expected hex digits after #x");
        while (std::isxdigit(static_cast<unsigned char>(peek()))) spelling.push_back(get());
        SExpr out = SExpr::atom(SExpr::Kind::Hexadecimal, spelling);
        out.pos = start;
        return out;
      }
      if (k == 'b') {
        if (peek() != '0' && peek() != '1') fail("BadToken", "expected binary digits after #b");
        while (peek() == '0' || peek() == '1') spelling.push_back(get());
        SExpr out = SExpr::atom(SExpr::Kind::Binary, spelling);
        out.pos = start;
        return out;
      }
      fail("BadToken", "expected #x or #b");
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string spelling;
      while (std::isdigit(static_cast<unsigned char>(peek()))) spelling.push_back(get());
      if (peek() == '.') {
        spelling.push_back(get());
        if (!std::isdigit(static_cast<unsigned char>(peek())))
          fail("BadToken", "expected digits after the decimal point");
        while (std::isdigit(static_cast<unsigned char>(peek()))) spelling.push_back(get());
        SExpr out = SExpr::atom(SExpr::Kind::Decimal, spelling);
        out.pos = start;
        return out;
      }
      SExpr out = SExpr::atom(SExpr::Kind::Numeral, spelling);
      out.pos = start;
      return out;
    }
    if (c == ':') {
      get();
      std::string token;
      while (!eof() && simple_symbol_char(peek())) token.push_back(get());
      if (token.empty()) fail("BadToken", "expected a keyword name after ':'");
      SExpr out = SExpr::atom(SExpr::Kind::Keyword, ":" + token);
      out.pos = start;
      return out;
    }
    if (simple_symbol_char(c)) {
      std::string token;
      while (!eof() && simple_symbol_char(peek())) token.push_back(get());
      SExpr out = SExpr::atom(SExpr::Kind::SymbolToken, token);
      out.pos = start;
      return out;
    }
    fail("BadToken", std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

SExpr SExpr::atom(Kind k, std::string text) {
  SExpr s;
  s.kind = k;
  s.text = std::move(text);
  return s;
}

SExpr SExpr::list(std::vector<SExpr> items) {
  SExpr s;
  s.kind = Kind::List;
  s.items = std::move(items);
  return s;
}

std::vector<SExpr> lex_sexpr(const std::string& text) {
  SexprLexer lex(text);
  std::vector<SExpr> out;
  for (;;) {
    lex.skip_trivia();
    if (lex.eof()) return out;
    out.push_back(lex.read());
  }
}

std::string print_sexpr(const SExpr& s) {
  switch (s.kind) {
    case SExpr::Kind::List: {
      std::string out = "(";
      for (size_t k = 0; k < s.items.size(); ++k) {
        if (k) out += " ";
        out += print_sexpr(s.items[k]);
      }
      return out + ")";
    }
    case SExpr::Kind::String: {
      std::string out = "\"";
      for (char c : s.text) {
        out.push_back(c);
        if (c == '"') out.push_back('"');
      }
      return out + "\"";
    }
    case SExpr::Kind::SymbolToken:
      if (s.quoted || needs_quoting(s.text)) return "|" + s.text + "|";
      return s.text;
    default:
      return s.text;
  }
}

// ---- term parsing ------------------------------------------------------------

namespace {

struct BuiltinOp {
  size_t min_arity;
  size_t max_arity;  // SIZE_MAX = unbounded
};

const std::map<std::string, BuiltinOp>& builtin_ops() {
  static const std::map<std::string, BuiltinOp> ops = {
      {"not", {1, 1}},      {"ite", {3, 3}},     {"=>", {2, SIZE_MAX}},
      {"=", {2, SIZE_MAX}}, {"distinct", {2, SIZE_MAX}},
      {"and", {1, SIZE_MAX}}, {"or", {1, SIZE_MAX}},
      {"+", {1, SIZE_MAX}}, {"*", {1, SIZE_MAX}}, {"-", {1, SIZE_MAX}},
      {"/", {2, SIZE_MAX}}, {"<", {2, SIZE_MAX}}, {"<=", {2, SIZE_MAX}},
      {">", {2, SIZE_MAX}}, {">=", {2, SIZE_MAX}},
  };
  return ops;
}

bool is_builtin_const(const std::string& token) { return token == "true" || token == "false"; }

Sort parse_sort_sexpr(const SExpr& s) {
  if (s.kind == SExpr::Kind::SymbolToken) return Sort::simple(s.text);
  if (s.kind == SExpr::Kind::List && !s.items.empty() &&
      s.items[0].kind == SExpr::Kind::SymbolToken) {
    Sort out = Sort::simple(s.items[0].text);
    for (size_t k = 1; k < s.items.size(); ++k) out.args.push_back(parse_sort_sexpr(s.items[k]));
    return out;
  }
  throw_parse("Syntax", "expected a sort", s.pos);
}

Term parse_term(const SExpr& s, const SmtParseCtx& ctx);

std::vector<std::pair<std::string, Sort>> parse_sorted_vars(const SExpr& s) {
  if (s.kind != SExpr::Kind::List || s.items.empty())
    throw_parse("Syntax", "expected a non-empty sorted variable list", s.pos);
  std::vector<std::pair<std::string, Sort>> out;
  for (const auto& item : s.items) {
    if (item.kind != SExpr::Kind::List || item.items.size() != 2 ||
        item.items[0].kind != SExpr::Kind::SymbolToken)
      throw_parse("Syntax", "expected (name sort)", item.pos);
    out.emplace_back(item.items[0].text, parse_sort_sexpr(item.items[1]));
  }
  return out;
}

// Sorted quantifiers behave as nested unary binders: with repeated names the
// later occurrence shadows the earlier one. The earlier ones are renamed fresh
// right away so downstream passes never see shadowing.
Term parse_quantifier(const SExpr& s, const SmtParseCtx& ctx, const Symbol& binder) {
  if (s.items.size() != 3)
    throw_parse("Syntax", "expected (" + binder.name + " ((x s)...) body)", s.pos);
  auto sorted = parse_sorted_vars(s.items[1]);
  SmtParseCtx inner = ctx;
  for (const auto& [name, sort] : sorted) inner.bound.insert(name);
  Term body = parse_term(s.items[2], inner);

  std::set<std::string> avoid = all_names(body);
  for (const auto& [name, sort] : sorted) avoid.insert(name);
  std::map<std::string, size_t> last_index;
  for (size_t k = 0; k < sorted.size(); ++k) last_index[sorted[k].first] = k;
  std::vector<BoundVar> vars;
  for (size_t k = 0; k < sorted.size(); ++k) {
    std::string name = sorted[k].first;
    if (last_index[name] != k) {
      name = fresh_name(name, avoid);
      avoid.insert(name);
    }
    vars.push_back(BoundVar{name, sorted[k].second});
  }
  return Term::bind(binder, std::move(vars), std::move(body));
}

Term parse_let(const SExpr& s, const SmtParseCtx& ctx) {
  if (s.items.size() != 3)
    throw_parse("Syntax", "expected (let ((x t)...) body)", s.pos);
  const SExpr& binds = s.items[1];
  if (binds.kind != SExpr::Kind::List || binds.items.empty())
    throw_parse("Syntax", "expected a non-empty binding list in let", binds.pos);
  std::vector<std::pair<std::string, Term>> bindings;
  std::set<std::string> seen;
  for (const auto& b : binds.items) {
    if (b.kind != SExpr::Kind::List || b.items.size() != 2 ||
        b.items[0].kind != SExpr::Kind::SymbolToken)
      throw_parse("Syntax", "expected (name term) in let", b.pos);
    const std::string& name = b.items[0].text;
    if (!seen.insert(name).second)
      throw_parse("DuplicateLetName", "let names must be distinct: '" + name + "'", b.pos);
    bindings.emplace_back(name, parse_term(b.items[1], ctx));  // outer scope
  }
  SmtParseCtx inner = ctx;
  for (const auto& [name, t] : bindings) inner.bound.insert(name);
  Term body = parse_term(s.items[2], inner);
  return substitute_simultaneous(body, bindings);
}

Term parse_atom(const SExpr& s, const SmtParseCtx& ctx) {
  switch (s.kind) {
    case SExpr::Kind::Numeral: return Term::lit(Literal::numeral(s.text));
    case SExpr::Kind::Decimal: return Term::lit(Literal::decimal(s.text));
    case SExpr::Kind::Hexadecimal: return Term::lit(Literal::hexadecimal(s.text));
    case SExpr::Kind::Binary: return Term::lit(Literal::binary(s.text));
    case SExpr::Kind::String: return Term::lit(Literal::string(s.text));
    case SExpr::Kind::Keyword:
      throw_parse("Syntax", "keyword " + s.text + " is not a term", s.pos);
    case SExpr::Kind::SymbolToken: {
      const std::string& tok = s.text;
      if (!s.quoted && ctx.bound.count(tok)) return Term::var(tok);
      if (s.quoted) return Term::sym(syms::smt(tok));  // |...| is explicitly a symbol
      if (is_builtin_const(tok)) return Term::sym(syms::smt(tok));
      if (ctx.declared.count(tok)) return Term::sym(syms::smt(tok));
      if (ctx.strict)
        throw_parse("UnknownSymbol", "undeclared symbol '" + tok + "'", s.pos);
      return Term::var(tok);
    }
    default:
      throw_parse("Syntax", "unexpected s-expression", s.pos);
  }
}

Term parse_term(const SExpr& s, const SmtParseCtx& ctx) {
  if (s.kind != SExpr::Kind::List) return parse_atom(s, ctx);
  if (s.items.empty()) throw_parse("Syntax", "empty application", s.pos);
  const SExpr& head = s.items[0];
  if (head.kind != SExpr::Kind::SymbolToken)
    throw_parse("Syntax", "application head must be a symbol", head.pos);
  const std::string& tok = head.text;
  if (!head.quoted) {
    if (tok == "forall") return parse_quantifier(s, ctx, syms::smt_forall());
    if (tok == "exists") return parse_quantifier(s, ctx, syms::smt_exists());
    if (tok == "let") return parse_let(s, ctx);
    if (tok == "!")
      throw_parse("Syntax", "attribute terms (! ...) are not supported", s.pos);
  }

  Term head_term;
  size_t argc = s.items.size() - 1;
  if (ctx.bound.count(tok)) {
    head_term = Term::var(tok);
  } else {
    auto builtin = builtin_ops().find(tok);
    if (builtin != builtin_ops().end()) {
      if (argc < builtin->second.min_arity || argc > builtin->second.max_arity)
        throw_parse("Arity",
                    "'" + tok + "' applied to " + std::to_string(argc) + " argument(s)",
                    s.pos);
    } else if (auto it = ctx.declared.find(tok); it != ctx.declared.end()) {
      if (argc != it->second)
        throw_parse("Arity",
                    "'" + tok + "' expects " + std::to_string(it->second) + " argument(s), got " +
                        std::to_string(argc),
                    s.pos);
    } else if (ctx.strict && !is_builtin_const(tok)) {
      throw_parse("UnknownSymbol", "undeclared symbol '" + tok + "'", head.pos);
    }
    head_term = Term::sym(syms::smt(tok));
  }
  std::vector<Term> args;
  args.reserve(argc);
  for (size_t k = 1; k < s.items.size(); ++k) args.push_back(parse_term(s.items[k], ctx));
  return Term::apply(std::move(head_term), std::move(args));
}

}  // namespace

Term parse_smt_term(const SExpr& s, const SmtParseCtx& ctx) { return parse_term(s, ctx); }

// ---- script parsing -----------------------------------------------------------

namespace {

const std::string& expect_symbol(const SExpr& s, const char* what) {
  if (s.kind != SExpr::Kind::SymbolToken) throw_parse("Syntax", std::string(what), s.pos);
  return s.text;
}

}  // namespace

Script parse_script(const std::string& text, std::vector<std::string>* warnings) {
  Script script;
  SmtParseCtx ctx;
  ctx.strict = true;
  bool seen_check_sat = false;
  for (const SExpr& form : lex_sexpr(text)) {
    if (form.kind != SExpr::Kind::List || form.items.empty() ||
        form.items[0].kind != SExpr::Kind::SymbolToken)
      throw_parse("Syntax", "expected a (command ...) form", form.pos);
    const std::string& name = form.items[0].text;
    Command cmd;
    if (name == "declare-sort") {
      if (form.items.size() != 3)
        throw_parse("Syntax", "expected (declare-sort name arity)", form.pos);
      cmd.kind = Command::Kind::DeclareSort;
      cmd.name = expect_symbol(form.items[1], "expected a sort name");
      if (form.items[2].kind != SExpr::Kind::Numeral)
        throw_parse("Syntax", "expected a numeral arity", form.items[2].pos);
      cmd.sort_arity = std::stoul(form.items[2].text);
    } else if (name == "declare-fun" || name == "declare-const") {
      cmd.kind = Command::Kind::DeclareFun;
      if (name == "declare-const") {
        if (form.items.size() != 3)
          throw_parse("Syntax", "expected (declare-const name sort)", form.pos);
        cmd.name = expect_symbol(form.items[1], "expected a function name");
        cmd.result_sort = parse_sort_sexpr(form.items[2]);
      } else {
        if (form.items.size() != 4 || form.items[2].kind != SExpr::Kind::List)
          throw_parse("Syntax", "expected (declare-fun name (sorts) sort)", form.pos);
        cmd.name = expect_symbol(form.items[1], "expected a function name");
        for (const auto& a : form.items[2].items) cmd.arg_sorts.push_back(parse_sort_sexpr(a));
        cmd.result_sort = parse_sort_sexpr(form.items[3]);
      }
      ctx.declared[cmd.name] = cmd.arg_sorts.size();
    } else if (name == "define-fun") {
      if (form.items.size() != 5)
        throw_parse("Syntax", "expected (define-fun name ((x s)...) sort body)", form.pos);
      cmd.kind = Command::Kind::DefineFun;
      cmd.name = expect_symbol(form.items[1], "expected a function name");
      if (form.items[2].kind != SExpr::Kind::List)
        throw_parse("Syntax", "expected a parameter list", form.items[2].pos);
      SmtParseCtx body_ctx = ctx;
      for (const auto& p : form.items[2].items) {
        if (p.kind != SExpr::Kind::List || p.items.size() != 2 ||
            p.items[0].kind != SExpr::Kind::SymbolToken)
          throw_parse("Syntax", "expected (name sort) parameter", p.pos);
        cmd.params.push_back(BoundVar{p.items[0].text, parse_sort_sexpr(p.items[1])});
        body_ctx.bound.insert(p.items[0].text);
      }
      cmd.result_sort = parse_sort_sexpr(form.items[3]);
      cmd.term = parse_smt_term(form.items[4], body_ctx);
      ctx.declared[cmd.name] = cmd.params.size();
    } else if (name == "assert" || name == "maximize" || name == "minimize") {
      if (form.items.size() != 2)
        throw_parse("Syntax", "expected (" + name + " term)", form.pos);
      cmd.kind = name == "assert"     ? Command::Kind::Assert
                 : name == "maximize" ? Command::Kind::Maximize
                                      : Command::Kind::Minimize;
      if (cmd.kind != Command::Kind::Assert && seen_check_sat)
        throw_parse("Syntax", name + " must precede check-sat", form.pos);
      cmd.term = parse_smt_term(form.items[1], ctx);
    } else if (name == "check-sat") {
      cmd.kind = Command::Kind::CheckSat;
      seen_check_sat = true;
    } else if (name == "get-value") {
      if (form.items.size() != 2 || form.items[1].kind != SExpr::Kind::List ||
          form.items[1].items.empty())
        throw_parse("Syntax", "expected (get-value (terms...))", form.pos);
      cmd.kind = Command::Kind::GetValue;
      for (const auto& t : form.items[1].items) cmd.terms.push_back(parse_smt_term(t, ctx));
    } else if (name == "get-model") {
      cmd.kind = Command::Kind::GetModel;
    } else if (name == "set-logic") {
      if (form.items.size() != 2)
        throw_parse("Syntax", "expected (set-logic name)", form.pos);
      cmd.kind = Command::Kind::SetLogic;
      cmd.name = expect_symbol(form.items[1], "expected a logic name");
    } else if (name == "exit") {
      cmd.kind = Command::Kind::Exit;
    } else {
      cmd.kind = Command::Kind::Passthrough;
      cmd.raw = form;
      if (warnings)
        warnings->push_back("unknown command '" + name + "' passed through verbatim");
    }
    script.commands.push_back(std::move(cmd));
  }
  return script;
}

// ---- printing -------------------------------------------------------------------

namespace {

std::string quote_token(const std::string& token) {
  if (needs_quoting(token)) return "|" + token + "|";
  return token;
}

}  // namespace

// Every double is dyadic, so the expansion below is finite.
std::string float_to_smt_decimal(double v) {
  if (std::isnan(v) || std::isinf(v))
    throw Error(ErrorClass::Parse, "Unprintable", "non-finite float in SMT-LIB output");
  bool neg = std::signbit(v);
  double a = neg ? -v : v;
  int exp = 0;
  double mant = std::frexp(a, &exp);  // a = mant * 2^exp, mant in [0.5, 1)
  BigInt m = 0;
  for (int k = 0; k < 53; ++k) {
    mant *= 2;
    int bit = static_cast<int>(mant);
    mant -= bit;
    m = m * 2 + bit;
  }
  exp -= 53;  // a = m * 2^exp exactly
  BigInt ip, frac_num, frac_den;
  if (exp >= 0) {
    ip = m << exp;
    frac_num = 0;
    frac_den = 1;
  } else {
    BigInt den = BigInt(1) << (-exp);
    ip = m / den;
    frac_num = m % den;
    frac_den = den;
  }
  std::string out = (neg && !(ip == 0 && frac_num == 0) ? "-" : "") + ip.str() + ".";
  if (frac_num == 0) {
    out += "0";
    return out;
  }
  std::string digits;
  while (frac_num != 0) {
    frac_num *= 10;
    digits += BigInt(frac_num / frac_den).str();
    frac_num %= frac_den;
  }
  return out + digits;
}

namespace {

struct SmtPrinter {
  std::vector<std::string>* warnings;
  std::string out;

  void warn(const std::string& msg) {
    if (warnings) warnings->push_back(msg);
  }

  void literal(const Literal& l) {
    switch (l.kind) {
      case LiteralKind::Numeral:
      case LiteralKind::Decimal:
      case LiteralKind::Hexadecimal:
      case LiteralKind::Binary:
        out += l.text;
        return;
      case LiteralKind::Integer:
        if (!l.text.empty() && l.text[0] == '-') {
          out += "(- " + l.text.substr(1) + ")";
        } else {
          out += l.text;
        }
        return;
      case LiteralKind::Float64:
        out += float_to_smt_decimal(l.f64);
        return;
      case LiteralKind::String: {
        out += "\"";
        for (char c : l.text) {
          out.push_back(c);
          if (c == '"') out.push_back('"');
        }
        out += "\"";
        return;
      }
      case LiteralKind::ByteArray:
        throw Error(ErrorClass::Parse, "Unprintable",
                    "byte arrays have no SMT-LIB spec_constant");
    }
  }

  void symbol(const Symbol& s) {
    if (s.origin == SymbolOrigin::Extension)
      throw Error(ErrorClass::Translate, "UnloweredExtension",
                  "extension symbol " + s.qualified() + " must be desugared first");
    if (s.origin == SymbolOrigin::SMTTheory) {
      out += quote_token(s.name);
      return;
    }
    // OpenMath symbol reaching SMT output: deterministic reversible mangling.
    out += "|" + s.qualified() + "|";
  }

  void term(const Term& t) {
    if (const auto* v = as_var(t)) {
      out += quote_token(v->name);
      return;
    }
    if (const auto* s = as_sym(t)) {
      symbol(s->symbol);
      return;
    }
    if (const auto* l = as_lit(t)) {
      literal(l->value);
      return;
    }
    if (const auto* a = as_apply(t)) {
      if (a->args.empty()) warn("printing a nullary application");
      out += "(";
      term(a->head);
      for (const auto& x : a->args) {
        out += " ";
        term(x);
      }
      out += ")";
      return;
    }
    if (const auto* b = as_bind(t)) {
      bind(*b);
      return;
    }
    if (const auto* at = as_attr(t)) {
      warn("attributions are dropped in SMT-LIB output");
      term(at->base);
      return;
    }
    throw Error(ErrorClass::Parse, "Unprintable",
                "term has no SMT-LIB form (error or foreign object)");
  }

  void bind(const BindNode& b) {
    Symbol binder = b.binder;
    if (binder.origin == SymbolOrigin::Extension)
      throw Error(ErrorClass::Translate, "UnloweredExtension",
                  "extension binder " + binder.qualified() + " must be desugared first");
    bool is_forall = binder == syms::smt_forall() || binder == syms::quant1_forall();
    bool is_exists = binder == syms::smt_exists() || binder == syms::quant1_exists();
    if (!is_forall && !is_exists)
      throw Error(ErrorClass::Translate, "UnmappedBinder",
                  "binder " + binder.qualified() + " has no SMT-LIB counterpart");
    if (b.condition)
      throw Error(ErrorClass::Translate, "UnmappedBinder",
                  "restricted binders have no SMT-LIB counterpart");
    out += is_forall ? "(forall (" : "(exists (";
    for (size_t k = 0; k < b.vars.size(); ++k) {
      if (k) out += " ";
      if (!b.vars[k].sort)
        throw Error(ErrorClass::Translate, "UnsortedBinder",
                    "bound variable '" + b.vars[k].name + "' has no sort");
      out += "(" + quote_token(b.vars[k].name) + " " + print_sort_smt(*b.vars[k].sort) + ")";
    }
    out += ") ";
    term(b.body);
    out += ")";
  }
};

}  // namespace

std::string print_sort_smt(const Sort& s) {
  if (s.args.empty()) return s.name;
  std::string out = "(" + s.name;
  for (const auto& a : s.args) out += " " + print_sort_smt(a);
  return out + ")";
}

std::string print_smt(const Term& t, std::vector<std::string>* warnings) {
  SmtPrinter p{warnings};
  p.term(t);
  return p.out;
}

std::string print_smt(const Script& s, std::vector<std::string>* warnings) {
  SmtPrinter p{warnings};
  for (const auto& cmd : s.commands) {
    switch (cmd.kind) {
      case Command::Kind::DeclareSort:
        p.out += "(declare-sort " + quote_token(cmd.name) + " " +
                 std::to_string(cmd.sort_arity) + ")";
        break;
      case Command::Kind::DeclareFun: {
        p.out += "(declare-fun " + quote_token(cmd.name) + " (";
        for (size_t k = 0; k < cmd.arg_sorts.size(); ++k) {
          if (k) p.out += " ";
          p.out += print_sort_smt(cmd.arg_sorts[k]);
        }
        p.out += ") " + print_sort_smt(*cmd.result_sort) + ")";
        break;
      }
      case Command::Kind::DefineFun: {
        p.out += "(define-fun " + quote_token(cmd.name) + " (";
        for (size_t k = 0; k < cmd.params.size(); ++k) {
          if (k) p.out += " ";
          p.out += "(" + quote_token(cmd.params[k].name) + " " +
                   print_sort_smt(*cmd.params[k].sort) + ")";
        }
        p.out += ") " + print_sort_smt(*cmd.result_sort) + " ";
        p.term(cmd.term);
        p.out += ")";
        break;
      }
      case Command::Kind::Assert:
        p.out += "(assert ";
        p.term(cmd.term);
        p.out += ")";
        break;
      case Command::Kind::Maximize:
      case Command::Kind::Minimize:
        p.out += cmd.kind == Command::Kind::Maximize ? "(maximize " : "(minimize ";
        p.term(cmd.term);
        p.out += ")";
        break;
      case Command::Kind::CheckSat:
        p.out += "(check-sat)";
        break;
      case Command::Kind::GetValue: {
        p.out += "(get-value (";
        for (size_t k = 0; k < cmd.terms.size(); ++k) {
          if (k) p.out += " ";
          p.term(cmd.terms[k]);
        }
        p.out += "))";
        break;
      }
      case Command::Kind::GetModel:
        p.out += "(get-model)";
        break;
      case Command::Kind::SetLogic:
        p.out += "(set-logic " + cmd.name + ")";
        break;
      case Command::Kind::Exit:
        p.out += "(exit)";
        break;
      case Command::Kind::Passthrough:
        p.out += print_sexpr(cmd.raw);
        break;
    }
    p.out += "\n";
  }
  return p.out;
}

// ---- results --------------------------------------------------------------------

bool is_canonical_value_term(const Term& t) {
  if (const auto* l = as_lit(t))
    return l->value.kind == LiteralKind::Numeral;
  if (const auto* s = as_sym(t))
    return *s == SymNode{syms::smt_true()} || *s == SymNode{syms::smt_false()};
  const auto* a = as_apply(t);
  if (!a) return false;
  const auto* h = as_sym(a->head);
  if (!h || h->symbol.origin != SymbolOrigin::SMTTheory) return false;
  if (h->symbol.name == "-" && a->args.size() == 1) {
    // negation wraps a positive numeral or a positive rational
    const Term& inner = a->args[0];
    if (const auto* l = as_lit(inner))
      return l->value.kind == LiteralKind::Numeral && l->value.text != "0";
    const auto* ia = as_apply(inner);
    if (!ia) return false;
    const auto* ih = as_sym(ia->head);
    return ih && ih->symbol.name == "/" && is_canonical_value_term(inner);
  }
  if (h->symbol.name == "/" && a->args.size() == 2) {
    const auto* num = as_lit(a->args[0]);
    const auto* den = as_lit(a->args[1]);
    if (!num || !den) return false;
    if (num->value.kind != LiteralKind::Numeral || den->value.kind != LiteralKind::Numeral)
      return false;
    BigInt p(num->value.text), q(den->value.text);
    return q > 1 && gcd(p, q) == 1;
  }
  return false;
}

SolverResult SolverResult::sat(std::vector<std::pair<Term, Term>> model) {
  for (size_t i = 0; i < model.size(); ++i) {
    if (!is_canonical_value_term(model[i].second))
      throw Error(ErrorClass::Eval, "NonCanonicalModelValue",
                  "model values must be canonical literals");
    for (size_t j = i + 1; j < model.size(); ++j)
      if (model[i].first == model[j].first)
        throw Error(ErrorClass::Eval, "DuplicateModelEntry",
                    "two model bindings share a left-hand term");
  }
  SolverResult r;
  r.status = Status::Sat;
  r.model = std::move(model);
  return r;
}

SolverResult SolverResult::unsat() {
  SolverResult r;
  r.status = Status::Unsat;
  return r;
}

SolverResult SolverResult::unknown() {
  SolverResult r;
  r.status = Status::Unknown;
  return r;
}

std::string print_smt(const SolverResult& r) {
  std::string out;
  switch (r.status) {
    case SolverResult::Status::Sat: out = "sat\n"; break;
    case SolverResult::Status::Unsat: out = "unsat\n"; break;
    case SolverResult::Status::Unknown: out = "unknown\n"; break;
  }
  if (r.model) {
    out += "(";
    for (size_t k = 0; k < r.model->size(); ++k) {
      if (k) out += " ";
      out += "(" + print_smt((*r.model)[k].first) + " " + print_smt((*r.model)[k].second) + ")";
    }
    out += ")\n";
  }
  return out;
}

}  // namespace mathbridge
