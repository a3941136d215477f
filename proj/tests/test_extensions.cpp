#include <doctest.h>

#include "helpers.hpp"
#include "mathbridge/error.hpp"
#include "mathbridge/extensions.hpp"
#include "mathbridge/omxml.hpp"
#include "mathbridge/oracle.hpp"

using namespace mathbridge;
using mbtest::num;
using mbtest::read_fixture;
using mbtest::sym;
using mbtest::var;

namespace {

DesugarStrategy eq1_strategy() { return DesugarStrategy{}; }

DesugarStrategy eq2_strategy() {
  DesugarStrategy s;
  s.exists_unique = DesugarStrategy::ExistsUnique::TwoQuantifier;
  return s;
}

Term exists_unique_of(Term body) {
  return Term::bind(syms::quant2_exists_unique(), {BoundVar{"x"}}, std::move(body));
}

// Counts alpha-equal copies of P(<bound var>) modulo which variable is bound.
size_t count_predicate_copies(const Term& t, const Term& pattern,
                              const std::string& pattern_var) {
  size_t hits = 0;
  walk(t, [&](const Term& s) {
    for (const auto& name : free_variables(s)) {
      Term candidate = substitute_simultaneous(pattern, {{pattern_var, Term::var(name)}});
      if (alpha_equal(s, candidate)) {
        ++hits;
        return;
      }
    }
    if (alpha_equal(s, pattern)) ++hits;
  });
  return hits;
}

size_t count_forall_vars(const Term& t) {
  size_t n = 0;
  walk(t, [&](const Term& s) {
    if (const auto* b = as_bind(s))
      if (b->binder == syms::quant1_forall()) n += b->vars.size();
  });
  return n;
}

bool has_alternation(const Term& t) {
  bool found = false;
  walk(t, [&](const Term& s) {
    const auto* b = as_bind(s);
    if (!b || !(b->binder == syms::quant1_exists())) return;
    walk(b->body, [&](const Term& inner) {
      const auto* ib = as_bind(inner);
      if (ib && ib->binder == syms::quant1_forall()) found = true;
    });
  });
  return found;
}

}  // namespace

TEST_CASE("Eq-1 style expansion: exists with a nested forall") {
  Term p = Term::apply(sym("relation1", "eq"), {var("x"), num("1")});
  Term lowered = desugar_exists_unique(exists_unique_of(p), eq1_strategy());

  Term expected = Term::bind(
      syms::quant1_exists(), {BoundVar{"x"}},
      Term::apply(Term::sym(syms::logic1_and()),
                  {p, Term::bind(syms::quant1_forall(), {BoundVar{"y"}},
                                 Term::apply(Term::sym(syms::logic1_implies()),
                                             {Term::apply(sym("relation1", "eq"),
                                                          {var("y"), num("1")}),
                                              Term::apply(sym("relation1", "eq"),
                                                          {var("x"), var("y")})}))}));
  CHECK(alpha_equal(lowered, expected));
  CHECK_FALSE(contains_extension_symbol(lowered));
}

TEST_CASE("Eq-2 style expansion: conjunction of exists and a two-variable forall") {
  Term p = Term::apply(sym("relation1", "eq"), {var("x"), num("1")});
  Term lowered = desugar_exists_unique(exists_unique_of(p), eq2_strategy());

  const auto* conj = as_apply(lowered);
  REQUIRE(conj != nullptr);
  CHECK(as_sym(conj->head)->symbol == syms::logic1_and());
  REQUIRE(conj->args.size() == 2);
  const auto* ex = as_bind(conj->args[0]);
  REQUIRE(ex != nullptr);
  CHECK(ex->binder == syms::quant1_exists());
  const auto* fa = as_bind(conj->args[1]);
  REQUIRE(fa != nullptr);
  CHECK(fa->binder == syms::quant1_forall());
  CHECK(fa->vars.size() == 2);
  CHECK_FALSE(contains_extension_symbol(lowered));
}

TEST_CASE("repetition accounting distinguishes the two expansions") {
  Term p = Term::apply(sym("p", "p"), {var("x")});
  Term eq1 = desugar_exists_unique(exists_unique_of(p), eq1_strategy());
  Term eq2 = desugar_exists_unique(exists_unique_of(p), eq2_strategy());

  CHECK(count_predicate_copies(eq1, p, "x") == 2);
  CHECK(count_predicate_copies(eq2, p, "x") == 3);
  CHECK(count_forall_vars(eq1) == 1);
  CHECK(count_forall_vars(eq2) == 2);
  CHECK(has_alternation(eq1));
  CHECK_FALSE(has_alternation(eq2));
}

TEST_CASE("fresh names dodge captures in the expansion") {
  // P(x) mentions a free y: the helper variable cannot be y
  Term p = Term::apply(sym("relation1", "eq"), {var("x"), var("y")});
  Term lowered = desugar_exists_unique(exists_unique_of(p), eq1_strategy());
  CHECK(free_variables(lowered) == std::set<std::string>{"y"});
  const auto* ex = as_bind(lowered);
  REQUIRE(ex != nullptr);
  const auto* conj = as_apply(ex->body);
  const auto* fa = as_bind(conj->args[1]);
  REQUIRE(fa != nullptr);
  CHECK(fa->vars[0].name != "y");
}

TEST_CASE("exists_unique rejections") {
  auto code_of = [](const Term& t, const DesugarStrategy& s) -> std::string {
    try {
      desugar_exists_unique(t, s);
    } catch (const Error& e) {
      return e.code();
    }
    return "";
  };
  Term two_vars = Term::bind(syms::quant2_exists_unique(), {BoundVar{"x"}, BoundVar{"y"}},
                             Term::sym(syms::logic1_true()));
  CHECK(code_of(two_vars, eq1_strategy()) == "MultiVarNotSupported");
  Term wrong = Term::bind(syms::quant1_exists(), {BoundVar{"x"}},
                          Term::sym(syms::logic1_true()));
  CHECK(code_of(wrong, eq1_strategy()) == "NotExistsUnique");
}

TEST_CASE("both expansions agree with exactly-one semantics, exhaustively") {
  // every domain size 1..4, every one of the 2^n predicates (30 in total)
  size_t checked = 0;
  for (size_t n = 1; n <= 4; ++n) {
    std::string carrier = "sort D = {0";
    for (size_t k = 1; k < n; ++k) carrier += ", " + std::to_string(k);
    carrier += "}\ndefault = D\n";
    PredicateStream stream(n);
    while (auto table = stream.next()) {
      Interpretation interp = parse_interpretation(carrier);
      auto& fun = interp.funs["p.p"];
      size_t trues = 0;
      for (size_t k = 0; k < n; ++k) {
        fun.push_back({{Value::rational(Rational(static_cast<int>(k)))},
                       Value::of_bool((*table)[k])});
        trues += (*table)[k];
      }
      Term p = Term::apply(sym("p", "p"), {var("x")});
      Term eu = exists_unique_of(p);
      Value expected = Value::of_bool(trues == 1);
      CHECK(eval(desugar_exists_unique(eu, eq1_strategy()), interp) == expected);
      CHECK(eval(desugar_exists_unique(eu, eq2_strategy()), interp) == expected);
      CHECK(eval(eu, interp) == expected);  // the direct reading agrees too
      ++checked;
    }
  }
  CHECK(checked == 30);
}

TEST_CASE("the paper's binder max lowers to the idiom listing") {
  OmDocument binder = parse_om_xml(read_fixture("max_option2.om.xml"));
  OmDocument idiom = parse_om_xml(read_fixture("max_option1.om.xml"));
  Term lowered = lower_max(binder.root);
  CHECK(alpha_equal(lowered, idiom.root));
  CHECK_FALSE(contains_extension_symbol(lowered));
}

TEST_CASE("operator-form max passes its function through untouched") {
  Term identity = Term::bind(syms::fns1_lambda(), {BoundVar{"x"}}, var("x"));
  Term t = Term::apply(Term::sym(syms::minmax2_max_sf()), {var("S"), identity});
  Term lowered = lower_max(t);
  Term expected = Term::apply(
      Term::sym(syms::minmax1_max()),
      {Term::apply(Term::sym(syms::set1_map()), {identity, var("S")})});
  CHECK(lowered == expected);
}

TEST_CASE("lower_max error cases") {
  auto code_of = [](const Term& t) -> std::string {
    try {
      lower_max(t);
    } catch (const Error& e) {
      return e.code();
    }
    return "";
  };
  CHECK(code_of(var("x")) == "NotAMaxForm");
  Term no_cond = Term::bind(syms::minmax2_max(), {BoundVar{"x"}}, var("x"));
  CHECK(code_of(no_cond) == "ConditionMissing");
  Term bad_cond = Term::bind_conditional(syms::minmax2_max(), {BoundVar{"x"}}, var("x"),
                                         Term::sym(syms::logic1_true()));
  CHECK(code_of(bad_cond) == "NotAMaxForm");
}

TEST_CASE("both lowered max forms evaluate to 1/4 on the quarter grid") {
  Interpretation grid = parse_interpretation("grid = 4\n");
  OmDocument binder = parse_om_xml(read_fixture("max_option2.om.xml"));
  Term from_binder = lower_max(binder.root);
  CHECK(eval(from_binder, grid) == Value::rational(parse_rational("1/4")));

  Term sf = Term::apply(
      Term::sym(syms::minmax2_max_sf()),
      {Term::apply(sym("interval1", "interval_cc"), {num("0"), num("1")}),
       Term::bind(syms::fns1_lambda(), {BoundVar{"x"}},
                  Term::apply(sym("arith1", "times"),
                              {var("x"), Term::apply(sym("arith1", "minus"),
                                                     {num("1"), var("x")})}))});
  CHECK(eval(lower_max(sf), grid) == Value::rational(parse_rational("1/4")));
}

TEST_CASE("argmax lowers to a comprehension whose grid value is {1/2}") {
  OmDocument argmax = parse_om_xml(read_fixture("argmax.om.xml"));
  Term lowered = lower_argmax(argmax.root);
  CHECK_FALSE(contains_extension_symbol(lowered));
  Interpretation grid = parse_interpretation("grid = 4\n");
  CHECK(eval(lowered, grid) ==
        Value::set_of({Value::rational(parse_rational("1/2"))}));
  // the lowering agrees with the direct reading
  CHECK(eval(argmax.root, grid) == eval(lowered, grid));
}

TEST_CASE("argmax with two maximizers returns both") {
  // -(x-1)(x-2) over {0,1,2,3}
  Term body = Term::apply(
      sym("arith1", "unary_minus"),
      {Term::apply(sym("arith1", "times"),
                   {Term::apply(sym("arith1", "minus"), {var("x"), num("1")}),
                    Term::apply(sym("arith1", "minus"), {var("x"), num("2")})})});
  Term set = Term::apply(sym("interval1", "interval_cc"), {num("0"), num("3")});
  Term argmax = Term::bind_conditional(
      syms::minmax2_argmax(), {BoundVar{"x"}}, body,
      Term::apply(sym("set1", "in"), {var("x"), set}));
  Interpretation i = parse_interpretation("grid = 3\n");
  Value expected = Value::set_of({Value::rational(1), Value::rational(2)});
  CHECK(eval(lower_argmax(argmax), i) == expected);
  CHECK(eval(argmax, i) == expected);
}

TEST_CASE("max and argmax cohere on finite instances") {
  Interpretation grid = parse_interpretation("grid = 4\n");
  OmDocument binder = parse_om_xml(read_fixture("max_option2.om.xml"));
  OmDocument argmax = parse_om_xml(read_fixture("argmax.om.xml"));
  Value max_value = eval(lower_max(binder.root), grid);
  Value winners = eval(lower_argmax(argmax.root), grid);
  REQUIRE(winners.kind == Value::Kind::Set);
  // f at each argmax point equals the max: f(1/2) = 1/4
  for (const auto& w : winners.set) {
    Interpretation with_x = grid;
    with_x.var_env["x"] = w;
    Term f = as_bind(binder.root)->body;
    CHECK(eval(f, with_x) == max_value);
  }
}

TEST_CASE("argmaxone witnesses are members of the argmax set") {
  Interpretation grid = parse_interpretation("grid = 4\n");
  OmDocument argmax = parse_om_xml(read_fixture("argmax.om.xml"));
  OmDocument argmaxone = parse_om_xml(read_fixture("argmaxone.om.xml"));
  Value winners = eval(lower_argmax(argmax.root), grid);
  Value witness = eval(argmaxone.root, grid);
  bool member = false;
  for (const auto& w : winners.set) member = member || w == witness;
  CHECK(member);
}

TEST_CASE("argmaxone scripts follow the declare/assert/maximize/check/get shape") {
  OptimizationGoal goal;
  goal.direction = OptimizationGoal::Direction::Maximize;
  goal.objective = Term::apply(
      mbtest::smt("*"),
      {var("x"), Term::apply(mbtest::smt("-"), {Term::lit(Literal::numeral("1")), var("x")})});
  goal.witness_vars = {{"x", Sort::simple("Real")}};
  std::vector<Term> constraints = {
      Term::apply(mbtest::smt("<="), {Term::lit(Literal::numeral("0")), var("x")}),
      Term::apply(mbtest::smt("<="), {var("x"), Term::lit(Literal::numeral("1"))})};
  Script s = lower_argmaxone_to_script(goal, constraints);
  CHECK(print_smt(s) == read_fixture("maximize_x1mx.smt2"));
}

TEST_CASE("a minimization goal emits a minimize command") {
  OptimizationGoal goal;
  goal.direction = OptimizationGoal::Direction::Minimize;
  goal.objective = var("x");
  goal.witness_vars = {{"x", Sort::simple("Real")}};
  std::vector<Term> constraints = {
      Term::apply(mbtest::smt("<="), {Term::lit(Literal::numeral("0")), var("x")})};
  Script s = lower_argmaxone_to_script(goal, constraints);
  std::string printed = print_smt(s);
  CHECK(printed.find("(minimize x)") != std::string::npos);
  CHECK(printed.find("(check-sat)") != std::string::npos);
}

TEST_CASE("goals that do not sort-check are rejected") {
  OptimizationGoal goal;
  goal.objective = Term::apply(mbtest::smt("*"), {var("x"), var("nowhere")});
  goal.witness_vars = {{"x", Sort::simple("Real")}};
  try {
    lower_argmaxone_to_script(goal, {});
    FAIL("expected UnsortedGoal");
  } catch (const Error& e) {
    CHECK(e.code() == "UnsortedGoal");
  }
}

TEST_CASE("two maximize goals appear in command order before check-sat") {
  OptimizationGoal goal;
  goal.objective = var("x");
  goal.witness_vars = {{"x", Sort::simple("Real")}};
  Script s = lower_argmaxone_to_script(goal, {});
  // append a second goal ahead of check-sat, then reparse to verify ordering
  Command extra;
  extra.kind = Command::Kind::Maximize;
  extra.term = var("x");
  s.commands.insert(s.commands.end() - 2, extra);
  Script again = parse_script(print_smt(s));
  std::vector<Command::Kind> kinds;
  for (const auto& c : again.commands) kinds.push_back(c.kind);
  std::vector<Command::Kind> expected = {Command::Kind::DeclareFun, Command::Kind::Maximize,
                                         Command::Kind::Maximize, Command::Kind::CheckSat,
                                         Command::Kind::GetValue};
  CHECK(kinds == expected);
}

TEST_CASE("desugar_all eliminates every extension constructor") {
  OmDocument eu = parse_om_xml(read_fixture("exists_unique.om.xml"));
  OmDocument mx = parse_om_xml(read_fixture("max_option2.om.xml"));
  Term combined = Term::apply(sym("relation1", "eq"),
                              {Term::apply(sym("f", "iverson"), {eu.root}), mx.root});
  Term lowered = desugar_all(combined, eq1_strategy());
  CHECK_FALSE(contains_extension_symbol(lowered));

  OmDocument am = parse_om_xml(read_fixture("argmax.om.xml"));
  CHECK_FALSE(contains_extension_symbol(desugar_all(am.root, eq2_strategy())));
}

TEST_CASE("desugar_all rejects embedded argmaxone") {
  OmDocument one = parse_om_xml(read_fixture("argmaxone.om.xml"));
  try {
    desugar_all(one.root, eq1_strategy());
    FAIL("expected ArgmaxOneNotTerm");
  } catch (const Error& e) {
    CHECK(e.code() == "ArgmaxOneNotTerm");
  }
}

TEST_CASE("max forms convert back and forth") {
  OmDocument binder = parse_om_xml(read_fixture("max_option2.om.xml"));
  Term as_operator =
      convert_max_form(binder.root, DesugarStrategy::MaxForm::SetFunctionOperator);
  const auto* op = as_apply(as_operator);
  REQUIRE(op != nullptr);
  CHECK(as_sym(op->head)->symbol == syms::minmax2_max_sf());

  Term back = convert_max_form(as_operator, DesugarStrategy::MaxForm::RestrictedBinder);
  CHECK(alpha_equal(back, binder.root));

  // both routes lower to alpha-equal idioms
  CHECK(alpha_equal(lower_max(as_operator), lower_max(binder.root)));
}
