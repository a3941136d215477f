// Acceptance suite: every check prints one PASS/FAIL line and the process
// exits nonzero if any fails. Timing thresholds are enforced inline.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mathbridge/extensions.hpp"
#include "mathbridge/omxml.hpp"
#include "mathbridge/oracle.hpp"
#include "mathbridge/popcorn.hpp"
#include "mathbridge/smtlib.hpp"
#include "mathbridge/sorts.hpp"
#include "mathbridge/translate.hpp"

#include "gen.hpp"

using namespace mathbridge;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name, std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion(const std::string& label, double budget_seconds,
               const std::function<void()>& body) {
  auto t0 = Clock::now();
  std::string verdict = "PASS";
  std::string detail;
  try {
    body();
  } catch (const std::exception& e) {
    verdict = "FAIL";
    detail = e.what();
  }
  double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
  if (verdict == "PASS" && elapsed > budget_seconds) {
    verdict = "FAIL";
    detail = "exceeded time budget";
  }
  std::ostringstream line;
  line << verdict << "  " << label << "  (" << elapsed << "s";
  if (!detail.empty()) line << "; " << detail;
  line << ")";
  std::cout << line.str() << "\n";
  if (verdict != "PASS") ++failures;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error(what);
}

Term parse_smt_text(const std::string& text) {
  auto forms = lex_sexpr(text);
  require(forms.size() == 1, "expected one form");
  SmtParseCtx ctx;
  return parse_smt_term(forms[0], ctx);
}

Value rat(const std::string& text) { return Value::rational(parse_rational(text)); }

// ---- criterion bodies ------------------------------------------------------

void parallel_encoding() {
  OmDocument doc = parse_om_xml(fixture("plus.om.xml"));
  SymbolMap map = SymbolMap::standard();
  SignatureTable table = SignatureTable::standard();

  std::string smt = print_smt(om_to_smt(doc.root, map, table));
  require(smt == "(+ x 1)", "smt encoding is '" + smt + "'");

  std::string sugared = print_popcorn(doc.root, PopcornConfig{PopcornConfig::Mode::Sugared});
  std::string qualified =
      print_popcorn(doc.root, PopcornConfig{PopcornConfig::Mode::Qualified});
  require(sugared == "$x+1", "sugared popcorn is '" + sugared + "'");
  require(qualified == "arith1.plus($x,1)", "qualified popcorn is '" + qualified + "'");

  Term from_smt = smt_to_om(parse_smt_text(smt), map);
  Term from_sugar = parse_popcorn(sugared);
  Term from_qualified = parse_popcorn(qualified);
  require(alpha_equal(doc.root, from_smt), "smt round-trip not alpha-equal");
  require(alpha_equal(doc.root, from_sugar), "sugared round-trip not alpha-equal");
  require(alpha_equal(doc.root, from_qualified), "qualified round-trip not alpha-equal");
}

void fig1_cross_translation() {
  OmDocument doc = parse_om_xml(fixture("fig1_fmp.om.xml"));
  SymbolMap map = SymbolMap::standard();
  SignatureTable table = SignatureTable::standard();
  table.var_sorts["a"] = Sort::simple("Int");
  table.var_sorts["b"] = Sort::simple("Int");

  Term smt = om_to_smt(doc.root, map, table);
  std::string printed = print_smt(smt);
  require(printed == "(forall ((a Int) (b Int)) (= (* a b) (* b a)))",
          "unexpected sorted forall: " + printed);

  Term reparsed = parse_smt_text(printed);
  require(reparsed == smt, "reparse drifted");
  require(check_sorts(reparsed, table) == Sort::simple("Bool"), "does not check to Bool");

  TranslateOptions opt;
  opt.times_cd = TranslateOptions::TimesCd::Arith2;
  Term back = smt_to_om(reparsed, map, opt);
  require(alpha_equal(strip_attributions(back), doc.root), "reverse not alpha-equal");
}

void exists_unique_equivalence() {
  size_t predicates = 0;
  for (size_t n = 1; n <= 4; ++n) {
    std::string carrier = "sort D = {0";
    for (size_t k = 1; k < n; ++k) carrier += ", " + std::to_string(k);
    carrier += "}\ndefault = D\n";
    PredicateStream stream(n);
    while (auto table = stream.next()) {
      Interpretation interp = parse_interpretation(carrier);
      size_t trues = 0;
      for (size_t k = 0; k < n; ++k) {
        interp.funs["p.p"].push_back({{rat(std::to_string(k))},
                                    Value::of_bool((*table)[k])});
        trues += (*table)[k];
      }
      Term p = Term::apply(Term::sym(syms::om("p", "p")), {Term::var("x")});
      Term eu = Term::bind(syms::quant2_exists_unique(), {BoundVar{"x"}}, p);
      DesugarStrategy eq1, eq2;
      eq2.exists_unique = DesugarStrategy::ExistsUnique::TwoQuantifier;
      Value expected = Value::of_bool(trues == 1);
      require(eval(desugar_exists_unique(eu, eq1), interp) == expected,
              "Eq.1 expansion diverges at |D|=" + std::to_string(n));
      require(eval(desugar_exists_unique(eu, eq2), interp) == expected,
              "Eq.2 expansion diverges at |D|=" + std::to_string(n));
      ++predicates;
    }
  }
  require(predicates == 30, "expected 30 predicates, ran " + std::to_string(predicates));
}

size_t count_p_copies(const Term& t) {
  size_t hits = 0;
  walk(t, [&](const Term& s) {
    const auto* a = as_apply(s);
    if (!a || a->args.size() != 1) return;
    const auto* h = as_sym(a->head);
    if (h && h->symbol == syms::om("p", "p") && as_var(a->args[0])) ++hits;
  });
  return hits;
}

void repetition_accounting() {
  Term p = Term::apply(Term::sym(syms::om("p", "p")), {Term::var("x")});
  Term eu = Term::bind(syms::quant2_exists_unique(), {BoundVar{"x"}}, p);
  DesugarStrategy eq1, eq2;
  eq2.exists_unique = DesugarStrategy::ExistsUnique::TwoQuantifier;
  Term t1 = desugar_exists_unique(eu, eq1);
  Term t2 = desugar_exists_unique(eu, eq2);

  require(count_p_copies(t1) == 2, "Eq.1 expansion must hold 2 copies of P");
  require(count_p_copies(t2) == 3, "Eq.2 expansion must hold 3 copies of P");

  size_t forall_vars_1 = 0, forall_vars_2 = 0;
  walk(t1, [&](const Term& s) {
    if (const auto* b = as_bind(s))
      if (b->binder == syms::quant1_forall()) forall_vars_1 += b->vars.size();
  });
  walk(t2, [&](const Term& s) {
    if (const auto* b = as_bind(s))
      if (b->binder == syms::quant1_forall()) forall_vars_2 += b->vars.size();
  });
  require(forall_vars_2 == 2, "Eq.2 expansion has two universal binders");
  require(forall_vars_1 == 1, "Eq.1 expansion has one universal binder");

  // the alternation: an exists with a forall underneath
  bool alternation = false;
  walk(t1, [&](const Term& s) {
    const auto* b = as_bind(s);
    if (!b || !(b->binder == syms::quant1_exists())) return;
    walk(b->body, [&](const Term& inner) {
      if (const auto* ib = as_bind(inner))
        if (ib->binder == syms::quant1_forall()) alternation = true;
    });
  });
  require(alternation, "Eq.1 expansion must alternate exists over forall");
  const auto* top2 = as_apply(t2);
  require(top2 && as_sym(top2->head) &&
              as_sym(top2->head)->symbol == syms::logic1_and(),
          "Eq.2 expansion is a conjunction, no alternation");
}

void max_quarter() {
  Interpretation grid = parse_interpretation("grid = 4\n");
  OmDocument operator_form = parse_om_xml(fixture("max_option1.om.xml"));
  OmDocument binder_form = parse_om_xml(fixture("max_option2.om.xml"));

  require(eval(operator_form.root, grid) == rat("1/4"), "operator-form max is not 1/4");
  Term lowered = lower_max(binder_form.root);
  require(alpha_equal(lowered, operator_form.root), "binder form does not lower to the idiom");
  require(eval(lowered, grid) == rat("1/4"), "lowered binder max is not 1/4");

  OmDocument argmax_doc = parse_om_xml(fixture("argmax.om.xml"));
  Value winners = eval(lower_argmax(argmax_doc.root), grid);
  require(winners == Value::set_of({rat("1/2")}), "argmax on the grid is not {1/2}");

  OmDocument argmaxone_doc = parse_om_xml(fixture("argmaxone.om.xml"));
  Script script = argmaxone_to_script(argmaxone_doc.root, SymbolMap::standard(),
                                      SignatureTable::standard());
  SolverResult r = eval_script(script, parse_interpretation(fixture("grid4.interp")));
  require(print_smt(r) == "sat\n((x (/ 1 2)))\n",
          "argmaxone witness is not 1/2: " + print_smt(r));
}

void binder_semantics() {
  // shadowed (forall ((x A) (x B)) phi) against the nested unary reading,
  // exhaustively over carriers of size 1..2 and all tables of p over B
  for (size_t na = 1; na <= 2; ++na) {
    for (size_t nb = 1; nb <= 2; ++nb) {
      for (size_t bits = 0; bits < (size_t{1} << nb); ++bits) {
        std::ostringstream text;
        text << "sort A = {0";
        for (size_t k = 1; k < na; ++k) text << ", " << k;
        text << "}\nsort B = {10";
        for (size_t k = 1; k < nb; ++k) text << ", " << 10 + k;
        text << "}\n";
        Interpretation interp = parse_interpretation(text.str());
        // (p x) parses as a theory token, so its table key is the bare name
        for (size_t k = 0; k < nb; ++k)
          interp.funs["p"].push_back({{rat(std::to_string(10 + k))},
                                      Value::of_bool((bits >> k) & 1)});

        Term shadowed = parse_smt_text("(forall ((x A) (x B)) (p x))");
        Term nested = parse_smt_text("(forall ((x A)) (forall ((x B)) (p x)))");
        require(eval(shadowed, interp) == eval(nested, interp),
                "shadowed forall diverges from the nested reading");
      }
    }
  }
  Term swap = parse_smt_text("(let ((x y) (y x)) (f x y))");
  Term expected = Term::apply(Term::sym(syms::smt("f")), {Term::var("y"), Term::var("x")});
  require(swap == expected, "let does not swap simultaneously");
}

void roundtrip_thousand() {
  {
    mbtest::TermGen gen(mbtest::TermGen::Lang::Om, 20260810);
    for (int k = 0; k < 1000; ++k) {
      OmDocument doc{gen.term(), std::nullopt, "2.0"};
      std::vector<std::string> warnings;
      require(parse_om_xml(print_om_xml(doc, &warnings)) == doc,
              "omxml round-trip failed at " + std::to_string(k));
    }
  }
  {
    mbtest::TermGen gen(mbtest::TermGen::Lang::Popcorn, 20260811);
    PopcornConfig sugared{PopcornConfig::Mode::Sugared};
    for (int k = 0; k < 1000; ++k) {
      Term t = gen.term();
      std::vector<std::string> warnings;
      require(parse_popcorn(print_popcorn(t, sugared, &warnings)) == t,
              "popcorn round-trip failed at " + std::to_string(k));
    }
  }
  {
    mbtest::TermGen gen(mbtest::TermGen::Lang::Smt, 20260812);
    for (int k = 0; k < 1000; ++k) {
      Term t = gen.term();
      std::vector<std::string> warnings;
      require(parse_smt_text(print_smt(t, &warnings)) == t,
              "smt round-trip failed at " + std::to_string(k));
    }
  }

  const std::pair<const char*, const char*> goldens[] = {
      {"plus.om.xml", "plus.golden.om.xml"},
      {"fig1_fmp.om.xml", "fig1_fmp.golden.om.xml"},
      {"max_option1.om.xml", "max_option1.golden.om.xml"},
      {"max_option2.om.xml", "max_option2.golden.om.xml"},
      {"exists_unique.om.xml", "exists_unique.golden.om.xml"},
      {"argmax.om.xml", "argmax.golden.om.xml"},
      {"argmaxone.om.xml", "argmaxone.golden.om.xml"},
  };
  for (const auto& [raw, golden] : goldens) {
    std::string want = fixture(golden);
    require(print_om_xml(parse_om_xml(fixture(raw))) == want,
            std::string("golden drift for ") + raw);
    require(print_om_xml(parse_om_xml(want)) == want,
            std::string("normalization not idempotent for ") + golden);
  }
  std::string script_text = fixture("maximize_x1mx.smt2");
  require(print_smt(parse_script(script_text)) == script_text, "script golden drifted");
}

void sort_checker() {
  SignatureTable table;
  for (auto& sig : load_sts(fixture("arith2.sts.xml"), "arith2")) table.add(std::move(sig));
  for (auto& sig : load_sts(fixture("relation1.sts.xml"), "")) table.add(std::move(sig));
  table.var_sorts["a"] = Sort::simple("S");
  table.var_sorts["b"] = Sort::simple("S");
  table.var_sorts["c"] = Sort::simple("S");
  table.var_sorts["d"] = Sort::simple("S");
  table.var_sorts["t"] = Sort::simple("T");

  auto times = [&](std::vector<Term> args) {
    return Term::apply(Term::sym(syms::arith2_times()), std::move(args));
  };
  for (size_t n = 2; n <= 4; ++n) {
    std::vector<Term> args;
    const char* names[] = {"a", "b", "c", "d"};
    for (size_t k = 0; k < n; ++k) args.push_back(Term::var(names[k]));
    require(check_sorts(times(args), table) == Sort::simple("S"),
            "nassoc rejected arity " + std::to_string(n));
  }
  try {
    check_sorts(times({Term::var("a")}), table);
    require(false, "unary times must be rejected");
  } catch (const Error& e) {
    require(e.code() == "ArityMismatch", std::string("wrong code: ") + e.code());
  }
  try {
    check_sorts(times({Term::var("a"), Term::var("t")}), table);
    require(false, "mixed sorts must be rejected");
  } catch (const Error& e) {
    require(e.code() == "SortMismatch", std::string("wrong code: ") + e.code());
    require(std::string(e.what()).find("argument 2") != std::string::npos,
            "error must carry the offending position");
  }
}

}  // namespace

int main() {
  criterion("1. parallel encoding of x+1 across all three syntaxes", 1.0, parallel_encoding);
  criterion("2. Fig. 1 FMP cross-translation, sort check, and return", 1.0,
            fig1_cross_translation);
  criterion("3. exists-unique: Eq.1 = Eq.2 = exactly-one on all 30 predicates", 5.0,
            exists_unique_equivalence);
  criterion("4. repetition accounting: 2 copies/alternation vs 3 copies/2 foralls", 1.0,
            repetition_accounting);
  criterion("5. max 1/4, argmax {1/2}, argmaxone witness 1/2 on the quarter grid", 1.0,
            max_quarter);
  criterion("6. shadowed binders match the nested reading; let swaps", 1.0, binder_semantics);
  criterion("7. 1000-term round-trips per syntax plus byte-identical goldens", 30.0,
            roundtrip_thousand);
  criterion("8. Fig. 2 nassoc accepts n in {2,3,4}, rejects n=1 and mixed sorts", 1.0,
            sort_checker);

  if (failures > 0) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all acceptance criteria passed\n";
  return 0;
}
