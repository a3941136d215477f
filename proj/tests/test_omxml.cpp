#include <doctest.h>

#include <limits>

#include "helpers.hpp"
#include "mathbridge/error.hpp"
#include "mathbridge/omxml.hpp"

using namespace mathbridge;
using mbtest::num;
using mbtest::read_fixture;
using mbtest::sym;
using mbtest::var;

TEST_CASE("the plus listing parses with OMI whitespace trimmed") {
  OmDocument doc = parse_om_xml(read_fixture("plus.om.xml"));
  Term expected = Term::apply(sym("arith1", "plus"), {var("x"), num("1")});
  CHECK(doc.root == expected);
  CHECK(doc.version == "2.0");
}

TEST_CASE("atomic leaves") {
  CHECK(parse_om_xml("<OMI>0</OMI>").root == num("0"));
  CHECK(parse_om_xml("<OMI> -42 </OMI>").root == num("-42"));
  CHECK(parse_om_xml("<OMSTR>hi there</OMSTR>").root ==
        Term::lit(Literal::string("hi there")));
  CHECK(parse_om_xml("<OMF dec=\"1.0\"/>").root == Term::lit(Literal::float64(1.0)));
  CHECK(parse_om_xml("<OMB>aGk=</OMB>").root == Term::lit(Literal::bytes("hi")));
}

TEST_CASE("the FMP document parses through its wrapper") {
  OmDocument doc = parse_om_xml(read_fixture("fig1_fmp.om.xml"));
  Term times_ab = Term::apply(sym("arith2", "times"), {var("a"), var("b")});
  Term times_ba = Term::apply(sym("arith2", "times"), {var("b"), var("a")});
  Term expected = Term::bind(syms::quant1_forall(), {BoundVar{"a"}, BoundVar{"b"}},
                             Term::apply(sym("relation1", "eq"), {times_ab, times_ba}));
  CHECK(doc.root == expected);
  CHECK(doc.cdbase == "http://www.openmath.org/cd");
}

TEST_CASE("the paper's binder-form max parses with its condition") {
  OmDocument doc = parse_om_xml(read_fixture("max_option2.om.xml"));
  const auto* b = as_bind(doc.root);
  REQUIRE(b != nullptr);
  CHECK(b->binder == syms::minmax2_max());
  CHECK(b->vars.size() == 1);
  REQUIRE(b->condition.has_value());
  const auto* cond = as_apply(*b->condition);
  REQUIRE(cond != nullptr);
  CHECK(as_sym(cond->head)->symbol == syms::set1_in());
}

TEST_CASE("parser error cases") {
  auto code_of = [](const std::string& text) -> std::string {
    try {
      parse_om_xml(text);
    } catch (const Error& e) {
      return e.code();
    }
    return "";
  };
  CHECK(code_of("<OMA><OMS cd=\"a\" name=\"b\"") == "XmlSyntax");
  CHECK(code_of("<NOTOM/>") == "UnknownElement");
  CHECK(code_of("<OMA></OMA>") == "EmptyApplication");
  CHECK(code_of("<OMBIND><OMS cd=\"quant1\" name=\"forall\"/><OMV name=\"x\"/>"
                "<OMV name=\"x\"/></OMBIND>") == "MissingBvar");
  CHECK(code_of("<OMI>12x</OMI>") == "BadInteger");
  CHECK(code_of("<OMBIND><OMS cd=\"quant1\" name=\"forall\"/>"
                "<OMBVAR><OMV name=\"x\"/><OMV name=\"x\"/></OMBVAR>"
                "<OMV name=\"x\"/></OMBIND>") == "DuplicateBoundVar");
}

TEST_CASE("print then parse is structural identity") {
  for (const char* fixture : {"plus.om.xml", "fig1_fmp.om.xml", "max_option1.om.xml",
                              "max_option2.om.xml", "exists_unique.om.xml"}) {
    OmDocument doc = parse_om_xml(read_fixture(fixture));
    std::string printed = print_om_xml(doc);
    OmDocument again = parse_om_xml(printed);
    CHECK_MESSAGE(again == doc, "round-trip drift in ", fixture);
    // printing is idempotent on already-normalized text
    CHECK(print_om_xml(again) == printed);
  }
}

TEST_CASE("sorted bound variables use the sts.sort attribution channel") {
  Term body = Term::apply(sym("relation1", "eq"), {var("a"), var("a")});
  Term t = Term::bind(syms::quant1_forall(), {BoundVar{"a", Sort::simple("S")}}, body);
  OmDocument doc{t, std::nullopt, "2.0"};
  std::string printed = print_om_xml(doc);
  CHECK(printed.find("<OMATTR>") != std::string::npos);
  CHECK(printed.find("<OMS cd=\"sts\" name=\"sort\"/>") != std::string::npos);
  OmDocument again = parse_om_xml(printed);
  CHECK(again.root == t);
}

TEST_CASE("foreign objects round-trip verbatim") {
  std::string text = "<OMFOREIGN encoding=\"text/plain\">anything &amp; more</OMFOREIGN>";
  OmDocument doc = parse_om_xml(text);
  const auto* f = as_foreign(doc.root);
  REQUIRE(f != nullptr);
  CHECK(f->encoding == "text/plain");
  OmDocument again = parse_om_xml(print_om_xml(doc));
  CHECK(again.root == doc.root);
}

TEST_CASE("attributions survive parse and print") {
  std::string text =
      "<OMATTR><OMATP><OMS cd=\"meta\" name=\"note\"/><OMSTR>kept</OMSTR></OMATP>"
      "<OMV name=\"x\"/></OMATTR>";
  OmDocument doc = parse_om_xml(text);
  REQUIRE(as_attr(doc.root) != nullptr);
  CHECK(parse_om_xml(print_om_xml(doc)).root == doc.root);
}

TEST_CASE("error objects parse as OME") {
  std::string text =
      "<OME><OMS cd=\"error\" name=\"div_by_zero\"/><OMV name=\"x\"/></OME>";
  OmDocument doc = parse_om_xml(text);
  const auto* e = as_error(doc.root);
  REQUIRE(e != nullptr);
  CHECK(e->symbol.name == "div_by_zero");
  CHECK(parse_om_xml(print_om_xml(doc)).root == doc.root);
}

TEST_CASE("SMT-only literal kinds refuse to print as OpenMath") {
  OmDocument doc{Term::lit(Literal::numeral("007")), std::nullopt, "2.0"};
  CHECK_THROWS_AS((void)print_om_xml(doc), Error);
}

TEST_CASE("non-finite floats print via the hex attribute") {
  double nan = std::numeric_limits<double>::quiet_NaN();
  OmDocument doc{Term::lit(Literal::float64(nan)), std::nullopt, "2.0"};
  std::string printed = print_om_xml(doc);
  CHECK(printed.find("hex=") != std::string::npos);
  OmDocument again = parse_om_xml(printed);
  CHECK(again.root == doc.root);  // NaN bit pattern compares equal
}
