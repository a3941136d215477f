#include "mathbridge/popcorn.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <map>

#include "mathbridge/error.hpp"

namespace mathbridge {

namespace {

enum class Tok {
  End,
  Var,        // $name
  Ident,      // bare identifier (sort names, keywords)
  Qualified,  // cd.name
  Integer,
  Float,
  String,
  Bytes,
  LParen,
  RParen,
  LBracket,
  RBracket,
  LBrace,
  RBrace,
  Comma,
  Colon,
  Arrow,   // ->
  Bang,    // ! (only before '(')
  Plus,
  Minus,
  Star,
  Slash,
  Eq,
  Neq,
  Lt,
  Leq,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;   // payload: name, cd for Qualified
  std::string text2;  // name for Qualified
  double fval = 0.0;
  SourcePos pos;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }

struct Lexer {
  const std::string& s;
  size_t i = 0;
  size_t line = 1, col = 1;

  explicit Lexer(const std::string& text) : s(text) {}

  char peek(size_t ahead = 0) const { return i + ahead < s.size() ? s[i + ahead] : '\0'; }

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

  SourcePos pos() const { return SourcePos{line, col}; }

  [[noreturn]] void fail(const std::string& msg) const { throw_parse("Syntax", msg, pos()); }

  std::string ident() {
    std::string out;
    out.push_back(get());
    for (;;) {
      char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'') {
        out.push_back(get());
      } else if (c == '!' && (std::isalnum(static_cast<unsigned char>(peek(1))) ||
                              peek(1) == '_')) {
        // fresh-name suffixes like x!1; a bare '!' stays a token
        out.push_back(get());
      } else {
        break;
      }
    }
    return out;
  }

  Token next() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(peek()))) get();
    Token t;
    t.pos = pos();
    if (i >= s.size()) return t;
    char c = peek();
    if (c == '$') {
      get();
      if (!ident_start(peek())) fail("expected a variable name after '$'");
      t.kind = Tok::Var;
      t.text = ident();
      return t;
    }
    if (ident_start(c)) {
      std::string first = ident();
      if (peek() == '.' && ident_start(peek(1))) {
        get();
        t.kind = Tok::Qualified;
        t.text = first;
        t.text2 = ident();
      } else {
        t.kind = Tok::Ident;
        t.text = first;
      }
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      while (std::isdigit(static_cast<unsigned char>(peek()))) num.push_back(get());
      bool is_float = false;
      if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
        is_float = true;
        num.push_back(get());
        while (std::isdigit(static_cast<unsigned char>(peek()))) num.push_back(get());
      }
      if (peek() == 'e' || peek() == 'E') {
        size_t save_i = i;
        std::string exp;
        exp.push_back(get());
        if (peek() == '+' || peek() == '-') exp.push_back(get());
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
          is_float = true;
          while (std::isdigit(static_cast<unsigned char>(peek()))) exp.push_back(get());
          num += exp;
        } else {
          i = save_i;  // not an exponent; re-lex as identifier later
        }
      }
      if (is_float) {
        t.kind = Tok::Float;
        t.fval = std::strtod(num.c_str(), nullptr);
        t.text = num;
      } else {
        t.kind = Tok::Integer;
        t.text = num;
      }
      return t;
    }
    if (c == '"') {
      get();
      std::string out;
      for (;;) {
        if (i >= s.size()) fail("unterminated string literal");
        char d = get();
        if (d == '"') break;
        if (d == '\\') {
          if (i >= s.size()) fail("unterminated escape");
          char e = get();
          if (e == '"' || e == '\\')
            out.push_back(e);
          else
            fail("unsupported escape '\\" + std::string(1, e) + "'");
        } else {
          out.push_back(d);
        }
      }
      t.kind = Tok::String;
      t.text = out;
      return t;
    }
    if (c == '%') {
      get();
      std::string hex;
      while (std::isxdigit(static_cast<unsigned char>(peek()))) hex.push_back(get());
      if (peek() != '%') fail("unterminated byte array literal");
      get();
      if (hex.size() % 2 != 0) fail("byte array needs an even number of hex digits");
      std::string raw;
      for (size_t k = 0; k < hex.size(); k += 2) {
        auto d = [&](char h) -> int {
          if (h >= '0' && h <= '9') return h - '0';
          if (h >= 'a' && h <= 'f') return h - 'a' + 10;
          return h - 'A' + 10;
        };
        raw.push_back(static_cast<char>(d(hex[k]) * 16 + d(hex[k + 1])));
      }
      t.kind = Tok::Bytes;
      t.text = raw;
      return t;
    }
    get();
    switch (c) {
      case '(': t.kind = Tok::LParen; return t;
      case ')': t.kind = Tok::RParen; return t;
      case '[': t.kind = Tok::LBracket; return t;
      case ']': t.kind = Tok::RBracket; return t;
      case '{': t.kind = Tok::LBrace; return t;
      case '}': t.kind = Tok::RBrace; return t;
      case ',': t.kind = Tok::Comma; return t;
      case ':': t.kind = Tok::Colon; return t;
      case '+': t.kind = Tok::Plus; return t;
      case '*': t.kind = Tok::Star; return t;
      case '/': t.kind = Tok::Slash; return t;
      case '=': t.kind = Tok::Eq; return t;
      case '-':
        if (peek() == '>') {
          get();
          t.kind = Tok::Arrow;
        } else {
          t.kind = Tok::Minus;
        }
        return t;
      case '!':
        if (peek() == '=') {
          get();
          t.kind = Tok::Neq;
        } else {
          t.kind = Tok::Bang;
        }
        return t;
      case '<':
        if (peek() == '=') {
          get();
          t.kind = Tok::Leq;
        } else {
          t.kind = Tok::Lt;
        }
        return t;
      default: fail(std::string("unexpected character '") + c + "'");
    }
  }
};

struct Parser {
  std::vector<Token> toks;
  size_t p = 0;

  explicit Parser(const std::string& text) {
    Lexer lex(text);
    for (;;) {
      Token t = lex.next();
      toks.push_back(t);
      if (t.kind == Tok::End) break;
    }
  }

  const Token& peek(size_t ahead = 0) const {
    size_t k = p + ahead;
    return k < toks.size() ? toks[k] : toks.back();
  }

  Token get() { return toks[p < toks.size() - 1 ? p++ : p]; }

  bool accept(Tok k) {
    if (peek().kind == k) {
      get();
      return true;
    }
    return false;
  }

  void expect(Tok k, const char* what) {
    if (!accept(k)) throw_parse("Syntax", std::string("expected ") + what, peek().pos);
  }

  bool at_keyword(const char* kw) const {
    return peek().kind == Tok::Ident && peek().text == kw;
  }

  Symbol resolve(const std::string& cd, const std::string& name) { return syms::om(cd, name); }

  Sort parse_sort() {
    if (peek().kind != Tok::Ident)
      throw_parse("Syntax", "expected a sort name", peek().pos);
    Sort s = Sort::simple(get().text);
    if (accept(Tok::LParen)) {
      if (!accept(Tok::RParen)) {
        do s.args.push_back(parse_sort());
        while (accept(Tok::Comma));
        expect(Tok::RParen, "')'");
      }
    }
    return s;
  }

  // level 1: implication / binder arrow (right-associative)
  Term parse_arrow() {
    if (peek().kind == Tok::Qualified && peek(1).kind == Tok::LBracket) return parse_binder();
    Term lhs = parse_or();
    if (accept(Tok::Arrow)) {
      Term rhs = parse_arrow();
      return Term::apply(Term::sym(syms::logic1_implies()), {lhs, rhs});
    }
    return lhs;
  }

  Term parse_binder() {
    Token head = get();
    Symbol binder = resolve(head.text, head.text2);
    expect(Tok::LBracket, "'['");
    std::vector<BoundVar> vars;
    std::set<std::string> seen;
    do {
      if (peek().kind != Tok::Var)
        throw_parse("Syntax", "expected a $variable in binder brackets", peek().pos);
      Token v = get();
      BoundVar bv{v.text, std::nullopt};
      if (accept(Tok::Colon)) bv.sort = parse_sort();
      if (!seen.insert(bv.name).second)
        throw_parse("DuplicateBoundVar", "repeated bound variable '$" + bv.name + "'", v.pos);
      vars.push_back(std::move(bv));
    } while (accept(Tok::Comma));
    expect(Tok::RBracket, "']'");
    expect(Tok::Arrow, "'->' after binder brackets");
    Term body = parse_arrow();
    if (at_keyword("where")) {
      get();
      Term cond = parse_arrow();
      return Term::bind_conditional(binder, std::move(vars), std::move(body), std::move(cond));
    }
    return Term::bind(binder, std::move(vars), std::move(body));
  }

  Term parse_or() {
    Term t = parse_and();
    while (at_keyword("or")) {
      get();
      Term rhs = parse_and();
      t = Term::apply(Term::sym(syms::logic1_or()), {t, rhs});
    }
    return t;
  }

  Term parse_and() {
    Term t = parse_rel();
    while (at_keyword("and")) {
      get();
      Term rhs = parse_rel();
      t = Term::apply(Term::sym(syms::logic1_and()), {t, rhs});
    }
    return t;
  }

  Term parse_rel() {
    Term t = parse_add();
    for (;;) {
      const Symbol* op = nullptr;
      if (peek().kind == Tok::Eq)
        op = &syms::relation1_eq();
      else if (peek().kind == Tok::Neq)
        op = &syms::relation1_neq();
      else if (peek().kind == Tok::Lt)
        op = &syms::relation1_lt();
      else if (peek().kind == Tok::Leq)
        op = &syms::relation1_leq();
      else if (at_keyword("in"))
        op = &syms::set1_in();
      else
        break;
      get();
      Term rhs = parse_add();
      t = Term::apply(Term::sym(*op), {t, rhs});
    }
    return t;
  }

  Term parse_add() {
    Term t = parse_mul();
    for (;;) {
      if (accept(Tok::Plus)) {
        Term rhs = parse_mul();
        t = Term::apply(Term::sym(syms::arith1_plus()), {t, rhs});
      } else if (accept(Tok::Minus)) {
        Term rhs = parse_mul();
        t = Term::apply(Term::sym(syms::arith1_minus()), {t, rhs});
      } else {
        break;
      }
    }
    return t;
  }

  Term parse_mul() {
    Term t = parse_unary();
    for (;;) {
      if (accept(Tok::Star)) {
        Term rhs = parse_unary();
        t = Term::apply(Term::sym(syms::arith1_times()), {t, rhs});
      } else if (accept(Tok::Slash)) {
        Term rhs = parse_unary();
        t = Term::apply(Term::sym(syms::arith1_divide()), {t, rhs});
      } else {
        break;
      }
    }
    return t;
  }

  Term parse_unary() {
    if (accept(Tok::Minus)) {
      // a bare negative literal folds; anything else is unary_minus
      if (peek().kind == Tok::Integer) {
        Token n = get();
        Term lit = Term::lit(Literal::integer("-" + n.text));
        return parse_postfix(lit);
      }
      if (peek().kind == Tok::Float) {
        Token n = get();
        return parse_postfix(Term::lit(Literal::float64(-n.fval)));
      }
      Term operand = parse_unary();
      return Term::apply(Term::sym(syms::arith1_unary_minus()), {operand});
    }
    return parse_postfix(parse_primary());
  }

  Term parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Var: {
        Token v = get();
        return Term::var(v.text);
      }
      case Tok::Qualified: {
        Token q = get();
        Symbol s = resolve(q.text, q.text2);
        if (peek().kind == Tok::Bang && peek(1).kind == Tok::LParen) {
          get();
          get();
          std::vector<Term> args;
          if (!accept(Tok::RParen)) {
            do args.push_back(parse_arrow());
            while (accept(Tok::Comma));
            expect(Tok::RParen, "')'");
          }
          return Term::error_term(s, std::move(args));
        }
        return Term::sym(s);
      }
      case Tok::Integer: {
        Token n = get();
        return Term::lit(Literal::integer(n.text));
      }
      case Tok::Float: {
        Token n = get();
        return Term::lit(Literal::float64(n.fval));
      }
      case Tok::String: {
        Token s = get();
        return Term::lit(Literal::string(s.text));
      }
      case Tok::Bytes: {
        Token b = get();
        return Term::lit(Literal::bytes(b.text));
      }
      case Tok::LParen: {
        get();
        Term inner = parse_arrow();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Ident:
        throw_parse("UnboundSugar",
                    "bare identifier '" + t.text + "' is not a term; did you mean cd." +
                        t.text + " or $" + t.text + "?",
                    t.pos);
      default:
        throw_parse("Syntax", "expected a term", t.pos);
    }
  }

  Term parse_postfix(Term t) {
    for (;;) {
      if (peek().kind == Tok::LParen) {
        get();
        std::vector<Term> args;
        if (!accept(Tok::RParen)) {
          do args.push_back(parse_arrow());
          while (accept(Tok::Comma));
          expect(Tok::RParen, "')'");
        }
        t = Term::apply(t, std::move(args));
      } else if (peek().kind == Tok::LBrace) {
        get();
        std::vector<std::pair<Symbol, Term>> pairs;
        do {
          if (peek().kind != Tok::Qualified)
            throw_parse("Syntax", "expected cd.name as attribution key", peek().pos);
          Token q = get();
          expect(Tok::Arrow, "'->' in attribution pair");
          pairs.emplace_back(resolve(q.text, q.text2), parse_arrow());
        } while (accept(Tok::Comma));
        expect(Tok::RBrace, "'}'");
        t = Term::attributed(std::move(pairs), t);
      } else {
        return t;
      }
    }
  }
};

// ---- printing --------------------------------------------------------------

struct InfixInfo {
  const char* token;
  int level;        // binding strength; higher binds tighter
  bool right_assoc;
};

const std::map<Symbol, InfixInfo>& infix_table() {
  static const std::map<Symbol, InfixInfo> table = {
      {syms::logic1_implies(), {"->", 1, true}},
      {syms::logic1_or(), {"or", 2, false}},
      {syms::logic1_and(), {"and", 3, false}},
      {syms::relation1_eq(), {"=", 4, false}},
      {syms::relation1_neq(), {"!=", 4, false}},
      {syms::relation1_lt(), {"<", 4, false}},
      {syms::relation1_leq(), {"<=", 4, false}},
      {syms::set1_in(), {"in", 4, false}},
      {syms::arith1_plus(), {"+", 5, false}},
      {syms::arith1_minus(), {"-", 5, false}},
      {syms::arith1_times(), {"*", 6, false}},
      {syms::arith1_divide(), {"/", 6, false}},
  };
  return table;
}

constexpr int kUnaryLevel = 7;
constexpr int kAtomLevel = 8;

struct PopPrinter {
  PopcornConfig cfg;
  std::vector<std::string>* warnings;
  std::string out;

  void warn(const std::string& msg) {
    if (warnings) warnings->push_back(msg);
  }

  [[noreturn]] void unprintable(const std::string& what) {
    throw Error(ErrorClass::Parse, "Unprintable", what + " cannot be printed as POPCORN");
  }

  static std::string sym_text(const Symbol& s) { return s.cd + "." + s.name; }

  void sort(const Sort& s) {
    out += s.name;
    if (!s.args.empty()) {
      out += "(";
      for (size_t k = 0; k < s.args.size(); ++k) {
        if (k) out += ",";
        sort(s.args[k]);
      }
      out += ")";
    }
  }

  void literal(const Literal& l) {
    switch (l.kind) {
      case LiteralKind::Integer:
        out += l.text;
        return;
      case LiteralKind::Float64: {
        if (std::isnan(l.f64) || std::isinf(l.f64)) unprintable("non-finite float");
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof buf, l.f64);
        std::string s(buf, res.ptr);
        if (s.find_first_of(".eE") == std::string::npos) s += ".0";
        out += s;
        return;
      }
      case LiteralKind::String: {
        out += '"';
        for (char c : l.text) {
          if (c == '"' || c == '\\') out += '\\';
          out += c;
        }
        out += '"';
        return;
      }
      case LiteralKind::ByteArray: {
        out += '%';
        static const char* digits = "0123456789abcdef";
        for (char c : l.text) {
          out += digits[(static_cast<unsigned char>(c) >> 4) & 0xF];
          out += digits[static_cast<unsigned char>(c) & 0xF];
        }
        out += '%';
        return;
      }
      default:
        unprintable("SMT-LIB spec_constant (translate it first)");
    }
  }

  bool starts_negative_literal(const Term& t) {
    const auto* l = as_lit(t);
    if (!l) return false;
    const Literal& lit = l->value;
    if (lit.kind == LiteralKind::Integer) return !lit.text.empty() && lit.text[0] == '-';
    if (lit.kind == LiteralKind::Float64) return std::signbit(lit.f64) != 0;
    return false;
  }

  // ctx: the minimum binding level the surrounding context requires.
  void term(const Term& t, int ctx) {
    if (const auto* v = as_var(t)) {
      out += "$" + v->name;
      return;
    }
    if (const auto* s = as_sym(t)) {
      out += sym_text(s->symbol);
      return;
    }
    if (const auto* l = as_lit(t)) {
      literal(l->value);
      return;
    }
    if (const auto* b = as_bind(t)) {
      bind(*b, ctx);
      return;
    }
    if (const auto* at = as_attr(t)) {
      term(at->base, kAtomLevel);
      out += "{";
      for (size_t k = 0; k < at->pairs.size(); ++k) {
        if (k) out += ",";
        out += sym_text(at->pairs[k].first);
        out += " -> ";
        term(at->pairs[k].second, 1);
      }
      out += "}";
      return;
    }
    if (const auto* e = as_error(t)) {
      out += sym_text(e->symbol);
      out += "!(";
      for (size_t k = 0; k < e->args.size(); ++k) {
        if (k) out += ",";
        term(e->args[k], 1);
      }
      out += ")";
      return;
    }
    if (as_foreign(t)) unprintable("foreign object");
    apply(*as_apply(t), ctx);
  }

  void bind(const BindNode& b, int ctx) {
    bool parens = ctx > 1;
    if (parens) out += "(";
    out += sym_text(b.binder);
    out += "[";
    for (size_t k = 0; k < b.vars.size(); ++k) {
      if (k) out += ",";
      out += "$" + b.vars[k].name;
      if (b.vars[k].sort) {
        out += " : ";
        sort(*b.vars[k].sort);
      }
    }
    out += "] -> ";
    if (b.condition) {
      // parenthesize a binder body so the where-clause reads unambiguously
      if (as_bind(b.body)) {
        out += "(";
        term(b.body, 1);
        out += ")";
      } else {
        term(b.body, 2);
      }
      out += " where ";
      term(*b.condition, 2);
    } else {
      term(b.body, 1);
    }
    if (parens) out += ")";
  }

  void apply(const ApplyNode& a, int ctx) {
    if (cfg.sugar == PopcornConfig::Mode::Sugared) {
      if (const auto* hs = as_sym(a.head)) {
        if (a.args.size() == 2) {
          auto it = infix_table().find(hs->symbol);
          if (it != infix_table().end()) {
            const InfixInfo& op = it->second;
            bool parens = ctx > op.level;
            if (parens) out += "(";
            term(a.args[0], op.right_assoc ? op.level + 1 : op.level);
            bool word = std::isalpha(static_cast<unsigned char>(op.token[0]));
            out += word ? std::string(" ") + op.token + " " : std::string(op.token);
            int rhs_ctx = op.right_assoc ? op.level : op.level + 1;
            // keep "a - -1" unambiguous: a negative literal after an operator
            // would re-lex into the operator
            if (!word && starts_negative_literal(a.args[1])) {
              out += "(";
              term(a.args[1], 1);
              out += ")";
            } else {
              term(a.args[1], rhs_ctx);
            }
            if (parens) out += ")";
            return;
          }
        }
        if (a.args.size() == 1 && hs->symbol == syms::arith1_unary_minus()) {
          bool parens = ctx > kUnaryLevel;
          if (parens) out += "(";
          out += "-";
          if (as_lit(a.args[0])) {
            out += "(";
            term(a.args[0], 1);
            out += ")";
          } else {
            term(a.args[0], kUnaryLevel);
          }
          if (parens) out += ")";
          return;
        }
      }
    }
    if (a.args.empty()) warn("printing a nullary application");
    bool head_atom = as_sym(a.head) || as_var(a.head);
    if (!head_atom) out += "(";
    term(a.head, kAtomLevel);
    if (!head_atom) out += ")";
    out += "(";
    for (size_t k = 0; k < a.args.size(); ++k) {
      if (k) out += ",";
      term(a.args[k], 1);
    }
    out += ")";
  }
};

}  // namespace

Term parse_popcorn(const std::string& text) {
  Parser p(text);
  Term t = p.parse_arrow();
  if (p.peek().kind != Tok::End)
    throw_parse("Syntax", "trailing input after term", p.peek().pos);
  return t;
}

std::string print_popcorn(const Term& t, const PopcornConfig& cfg,
                          std::vector<std::string>* warnings) {
  PopPrinter pr{cfg, warnings};
  pr.term(t, 1);
  return pr.out;
}

}  // namespace mathbridge
