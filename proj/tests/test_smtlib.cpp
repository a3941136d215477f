#include <doctest.h>

#include "helpers.hpp"
#include "mathbridge/error.hpp"
#include "mathbridge/smtlib.hpp"

using namespace mathbridge;
using mbtest::read_fixture;
using mbtest::smt;
using mbtest::var;

namespace {

Term parse_term_text(const std::string& text, SmtParseCtx ctx = {}) {
  auto forms = lex_sexpr(text);
  REQUIRE(forms.size() == 1);
  return parse_smt_term(forms[0], ctx);
}

}  // namespace

TEST_CASE("lexing follows the s-expression grammar") {
  auto forms = lex_sexpr("(+ x 1)");
  REQUIRE(forms.size() == 1);
  REQUIRE(forms[0].kind == SExpr::Kind::List);
  REQUIRE(forms[0].items.size() == 3);
  CHECK(forms[0].items[0].text == "+");
  CHECK(forms[0].items[1].kind == SExpr::Kind::SymbolToken);
  CHECK(forms[0].items[2].kind == SExpr::Kind::Numeral);

  auto empty = lex_sexpr("()");
  CHECK(empty[0].items.empty());

  auto hex = lex_sexpr("#xFF");
  CHECK(hex[0].kind == SExpr::Kind::Hexadecimal);
  CHECK(hex[0].text == "#xFF");
  CHECK(print_sexpr(hex[0]) == "#xFF");  // spelling preserved bit-exactly

  auto spellings = lex_sexpr("007 1.50 #b0011 \"a\"\"b\" |odd name| :kw ; comment\n x");
  CHECK(print_sexpr(spellings[0]) == "007");
  CHECK(print_sexpr(spellings[1]) == "1.50");
  CHECK(print_sexpr(spellings[2]) == "#b0011");
  CHECK(print_sexpr(spellings[3]) == "\"a\"\"b\"");
  CHECK(print_sexpr(spellings[4]) == "|odd name|");
  CHECK(spellings[5].kind == SExpr::Kind::Keyword);
  CHECK(spellings[6].text == "x");
}

TEST_CASE("lexer error cases") {
  CHECK_THROWS_AS(lex_sexpr("(+ x"), Error);
  CHECK_THROWS_AS(lex_sexpr(")"), Error);
  CHECK_THROWS_AS(lex_sexpr("#q12"), Error);
  CHECK_THROWS_AS(lex_sexpr("\"open"), Error);
}

TEST_CASE("terms parse with free atoms as variables") {
  Term t = parse_term_text("(+ x 1)");
  Term expected =
      Term::apply(smt("+"), {var("x"), Term::lit(Literal::numeral("1"))});
  CHECK(t == expected);
}

TEST_CASE("sorted quantifiers and shadowing normalization") {
  Term t = parse_term_text("(forall ((a S) (b S)) (= (times a b) (times b a)))");
  const auto* b = as_bind(t);
  REQUIRE(b != nullptr);
  CHECK(b->binder == syms::smt_forall());
  CHECK(b->vars.size() == 2);
  CHECK(b->vars[0].sort == Sort::simple("S"));

  // repeated names: the earlier occurrence is renamed fresh
  Term s = parse_term_text("(forall ((x A) (x B)) (p x))");
  const auto* sb = as_bind(s);
  REQUIRE(sb != nullptr);
  CHECK(sb->vars[0].name == "x!1");
  CHECK(sb->vars[0].sort == Sort::simple("A"));
  CHECK(sb->vars[1].name == "x");
  CHECK(sb->vars[1].sort == Sort::simple("B"));
  CHECK(free_variables(sb->body) == std::set<std::string>{"x"});
}

TEST_CASE("let expands simultaneously and leaves no node behind") {
  Term t = parse_term_text("(let ((x y) (y x)) (f x y))");
  Term expected = Term::apply(smt("f"), {var("y"), var("x")});
  CHECK(t == expected);

  // nothing named let survives anywhere in parsed terms
  size_t binds = 0;
  walk(t, [&](const Term& s) {
    if (const auto* b = as_bind(s)) {
      ++binds;
      CHECK(b->binder.name != "let");
    }
  });
  CHECK(binds == 0);
}

TEST_CASE("let bodies see the outer scope in the bound terms") {
  // (let ((x (+ y 1))) (* x x)) -> (* (+ y 1) (+ y 1))
  Term t = parse_term_text("(let ((x (+ y 1))) (* x x))");
  Term plus = Term::apply(smt("+"), {var("y"), Term::lit(Literal::numeral("1"))});
  CHECK(t == Term::apply(smt("*"), {plus, plus}));
}

TEST_CASE("term-parse error cases") {
  auto code_of = [](const std::string& text, SmtParseCtx ctx = {}) -> std::string {
    try {
      parse_term_text(text, ctx);
    } catch (const Error& e) {
      return e.code();
    }
    return "";
  };
  CHECK(code_of("(let ((x 1) (x 2)) x)") == "DuplicateLetName");
  CHECK(code_of("(not a b)") == "Arity");
  CHECK(code_of("(ite c)") == "Arity");
  SmtParseCtx strict;
  strict.strict = true;
  CHECK(code_of("(f x)", strict) == "UnknownSymbol");
  SmtParseCtx declared;
  declared.declared["f"] = 2;
  CHECK(code_of("(f x)", declared) == "Arity");
}

TEST_CASE("scripts parse into the command sequence") {
  std::vector<std::string> warnings;
  Script s = parse_script(read_fixture("maximize_x1mx.smt2"), &warnings);
  CHECK(warnings.empty());
  REQUIRE(s.commands.size() == 6);
  CHECK(s.commands[0].kind == Command::Kind::DeclareFun);
  CHECK(s.commands[0].name == "x");
  CHECK(s.commands[1].kind == Command::Kind::Assert);
  CHECK(s.commands[3].kind == Command::Kind::Maximize);
  CHECK(s.commands[4].kind == Command::Kind::CheckSat);
  CHECK(s.commands[5].kind == Command::Kind::GetValue);
  REQUIRE(s.commands[5].terms.size() == 1);

  // print and reparse: same shape
  std::string printed = print_smt(s);
  Script again = parse_script(printed);
  CHECK(print_smt(again) == printed);
}

TEST_CASE("multiple goals may precede check-sat, not follow it") {
  std::string good =
      "(declare-fun x () S)(maximize x)(maximize (* x x))(check-sat)(get-value (x))";
  Script s = parse_script(good);
  CHECK(s.commands.size() == 5);
  std::string bad = "(declare-fun x () S)(check-sat)(maximize x)";
  CHECK_THROWS_AS(parse_script(bad), Error);
}

TEST_CASE("unknown commands pass through with a warning") {
  std::vector<std::string> warnings;
  Script s = parse_script("(set-option :produce-models true)(check-sat)", &warnings);
  REQUIRE(warnings.size() == 1);
  CHECK(s.commands[0].kind == Command::Kind::Passthrough);
  CHECK(print_smt(s) == "(set-option :produce-models true)\n(check-sat)\n");
}

TEST_CASE("printing terms reparses structurally equal") {
  Term t = parse_term_text("(forall ((a S) (b S)) (= (times a b) (times b a)))");
  std::string printed = print_smt(t);
  CHECK(printed == "(forall ((a S) (b S)) (= (times a b) (times b a)))");
  CHECK(parse_term_text(printed) == t);
}

TEST_CASE("printer rejects what the dialect cannot express") {
  Term unsorted =
      Term::bind(syms::smt_forall(), {BoundVar{"x"}}, Term::sym(syms::smt_true()));
  CHECK_THROWS_AS((void)print_smt(unsorted), Error);

  Term ext = Term::bind(syms::quant2_exists_unique(), {BoundVar{"x", Sort::simple("S")}},
                        Term::sym(syms::smt_true()));
  CHECK_THROWS_AS((void)print_smt(ext), Error);

  Term lambda = Term::bind(syms::fns1_lambda(), {BoundVar{"x", Sort::simple("S")}},
                           var("x"));
  CHECK_THROWS_AS((void)print_smt(lambda), Error);
}

TEST_CASE("mangled OpenMath symbols print quoted") {
  Term t = Term::apply(Term::sym(syms::om("arith1", "plus")),
                       {var("x"), Term::lit(Literal::numeral("1"))});
  CHECK(print_smt(t) == "(|arith1.plus| x 1)");
}

TEST_CASE("solver results print as sat/unsat plus a model block") {
  CHECK(print_smt(SolverResult::unsat()) == "unsat\n");
  Term half = Term::apply(smt("/"), {Term::lit(Literal::numeral("1")),
                                     Term::lit(Literal::numeral("2"))});
  SolverResult r = SolverResult::sat({{smt("x"), half}});
  CHECK(print_smt(r) == "sat\n((x (/ 1 2)))\n");
}

TEST_CASE("model invariants reject bad blocks") {
  Term one = Term::lit(Literal::numeral("1"));
  CHECK_THROWS_AS(SolverResult::sat({{smt("x"), one}, {smt("x"), one}}), Error);
  // a non-canonical value: (/ 2 4)
  Term bad = Term::apply(smt("/"), {Term::lit(Literal::numeral("2")),
                                    Term::lit(Literal::numeral("4"))});
  CHECK_THROWS_AS(SolverResult::sat({{smt("y"), bad}}), Error);
}

TEST_CASE("canonical value terms") {
  auto numeral = [](const char* d) { return Term::lit(Literal::numeral(d)); };
  CHECK(is_canonical_value_term(numeral("0")));
  CHECK(is_canonical_value_term(Term::apply(smt("-"), {numeral("5")})));
  CHECK(is_canonical_value_term(Term::apply(smt("/"), {numeral("1"), numeral("2")})));
  CHECK(is_canonical_value_term(
      Term::apply(smt("-"), {Term::apply(smt("/"), {numeral("1"), numeral("2")})})));
  CHECK_FALSE(is_canonical_value_term(Term::apply(smt("-"), {numeral("0")})));
  CHECK_FALSE(is_canonical_value_term(Term::apply(smt("/"), {numeral("2"), numeral("1")})));
  CHECK_FALSE(is_canonical_value_term(var("x")));
}

TEST_CASE("exact decimal expansion of binary64") {
  CHECK(float_to_smt_decimal(1.0) == "1.0");
  CHECK(float_to_smt_decimal(0.5) == "0.5");
  CHECK(float_to_smt_decimal(-2.25) == "-2.25");
  // 0.1 is not dyadic; its double is the nearest representable value
  std::string tenth = float_to_smt_decimal(0.1);
  CHECK(tenth.substr(0, 4) == "0.10");
  CHECK(std::strtod(tenth.c_str(), nullptr) == 0.1);
}
