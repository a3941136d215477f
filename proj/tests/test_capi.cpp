// Exercises the shared-library surface exactly as an FFI client would.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "mathbridge.h"

namespace {

std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Ctx {
  mb_ctx* c = mb_ctx_new();
  ~Ctx() { mb_ctx_free(c); }
  operator mb_ctx*() const { return c; }
};

struct Obj {
  mb_obj* o = nullptr;
  ~Obj() { mb_obj_free(o); }
  mb_obj** out() { return &o; }
  operator const mb_obj*() const { return o; }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  mb_str_free(s);
  return out;
}

}  // namespace

TEST_CASE("version and context lifecycle") {
  CHECK(std::string(mb_version()) == "0.1.0");
  Ctx ctx;
  REQUIRE(ctx.c != nullptr);
  CHECK(std::string(mb_ctx_error(ctx)) == "");
}

TEST_CASE("parse, print, translate the plus listing") {
  Ctx ctx;
  Obj obj;
  REQUIRE(mb_parse(ctx, MB_FORMAT_OMXML, read_fixture("plus.om.xml").c_str(), obj.out()) ==
          MB_OK);
  CHECK(mb_obj_get_kind(obj) == MB_OBJ_TERM);

  char* out = nullptr;
  REQUIRE(mb_translate(ctx, obj, MB_FORMAT_SMT2, &out) == MB_OK);
  CHECK(take(out) == "(+ x 1)");

  REQUIRE(mb_translate(ctx, obj, MB_FORMAT_POPCORN, &out) == MB_OK);
  CHECK(take(out) == "arith1.plus($x,1)");

  REQUIRE(mb_ctx_set_option(ctx, "popcorn-sugar", "on") == MB_OK);
  REQUIRE(mb_translate(ctx, obj, MB_FORMAT_POPCORN, &out) == MB_OK);
  CHECK(take(out) == "$x+1");
}

TEST_CASE("alpha comparison across syntaxes") {
  Ctx ctx;
  Obj om, pop;
  REQUIRE(mb_parse(ctx, MB_FORMAT_OMXML, read_fixture("plus.om.xml").c_str(), om.out()) ==
          MB_OK);
  REQUIRE(mb_parse(ctx, MB_FORMAT_POPCORN, "$x+1", pop.out()) == MB_OK);
  int equal = 0;
  REQUIRE(mb_alpha_equal(ctx, om, pop, &equal) == MB_OK);
  CHECK(equal == 1);
}

TEST_CASE("status codes and error text") {
  Ctx ctx;
  Obj obj;
  CHECK(mb_parse(ctx, MB_FORMAT_OMXML, "<NOTOM/>", obj.out()) == MB_ERR_PARSE);
  CHECK(std::string(mb_ctx_error_code(ctx)) == "UnknownElement");
  CHECK(std::string(mb_ctx_error(ctx)).find("NOTOM") != std::string::npos);

  // parse is fine, translation is not: a lambda has no SMT-LIB counterpart
  Obj lambda;
  REQUIRE(mb_parse(ctx, MB_FORMAT_POPCORN, "fns1.lambda[$x] -> $x", lambda.out()) == MB_OK);
  char* out = nullptr;
  CHECK(mb_translate(ctx, lambda, MB_FORMAT_SMT2, &out) == MB_ERR_TRANSLATE);
  CHECK(std::string(mb_ctx_error_code(ctx)) == "UnmappedBinder");

  CHECK(mb_ctx_set_option(ctx, "exists-unique", "eq3") == MB_ERR_USAGE);
}

TEST_CASE("desugar routes argmaxone to a script") {
  Ctx ctx;
  Obj obj;
  REQUIRE(mb_parse(ctx, MB_FORMAT_OMXML, read_fixture("argmaxone.om.xml").c_str(),
                   obj.out()) == MB_OK);
  Obj lowered;
  REQUIRE(mb_desugar(ctx, obj, lowered.out()) == MB_OK);
  CHECK(mb_obj_get_kind(lowered) == MB_OBJ_SCRIPT);
  char* out = nullptr;
  REQUIRE(mb_print(ctx, lowered, MB_FORMAT_SMT2, &out) == MB_OK);
  CHECK(take(out) == read_fixture("maximize_x1mx.smt2"));
}

TEST_CASE("desugar strategies differ per option") {
  Ctx ctx;
  Obj obj;
  REQUIRE(mb_parse(ctx, MB_FORMAT_OMXML, read_fixture("exists_unique.om.xml").c_str(),
                   obj.out()) == MB_OK);
  Obj eq1, eq2;
  REQUIRE(mb_desugar(ctx, obj, eq1.out()) == MB_OK);
  REQUIRE(mb_ctx_set_option(ctx, "exists-unique", "eq2") == MB_OK);
  REQUIRE(mb_desugar(ctx, obj, eq2.out()) == MB_OK);
  int same = 1;
  REQUIRE(mb_alpha_equal(ctx, eq1, eq2, &same) == MB_OK);
  CHECK(same == 0);
}

TEST_CASE("sort checking through the C API") {
  Ctx ctx;
  REQUIRE(mb_ctx_load_sts(ctx, "arith2", read_fixture("arith2.sts.xml").c_str()) == MB_OK);
  Obj fmp;
  REQUIRE(mb_parse(ctx, MB_FORMAT_OMXML, read_fixture("fig1_fmp.om.xml").c_str(),
                   fmp.out()) == MB_OK);
  char* sort = nullptr;
  REQUIRE(mb_check_sorts(ctx, fmp, &sort) == MB_OK);
  CHECK(take(sort) == "Bool");

  Obj bad;
  REQUIRE(mb_parse(ctx, MB_FORMAT_POPCORN, "arith2.times($a)", bad.out()) == MB_OK);
  CHECK(mb_check_sorts(ctx, bad, &sort) == MB_ERR_SORT);
  CHECK(std::string(mb_ctx_error_code(ctx)) == "ArityMismatch");
}

TEST_CASE("evaluation through the C API") {
  Ctx ctx;
  REQUIRE(mb_ctx_load_interpretation(ctx, read_fixture("grid4.interp").c_str()) == MB_OK);

  Obj maxed;
  REQUIRE(mb_parse(ctx, MB_FORMAT_OMXML, read_fixture("max_option1.om.xml").c_str(),
                   maxed.out()) == MB_OK);
  char* out = nullptr;
  REQUIRE(mb_eval(ctx, maxed, &out) == MB_OK);
  CHECK(take(out) == "1/4");

  Obj script;
  REQUIRE(mb_parse(ctx, MB_FORMAT_SMT2, read_fixture("maximize_x1mx.smt2").c_str(),
                   script.out()) == MB_OK);
  CHECK(mb_obj_get_kind(script) == MB_OBJ_SCRIPT);
  REQUIRE(mb_eval(ctx, script, &out) == MB_OK);
  CHECK(take(out) == "sat\n((x (/ 1 2)))\n");

  // without an interpretation, eval refuses
  Ctx bare;
  Obj t;
  REQUIRE(mb_parse(bare, MB_FORMAT_POPCORN, "1+1", t.out()) == MB_OK);
  CHECK(mb_eval(bare, t, &out) == MB_ERR_EVAL);
}

TEST_CASE("warnings surface through the context") {
  Ctx ctx;
  Obj obj;
  REQUIRE(mb_parse(ctx, MB_FORMAT_SMT2, "(set-option :x 1)\n(check-sat)", obj.out()) ==
          MB_OK);
  CHECK(std::string(mb_ctx_warnings(ctx)).find("set-option") != std::string::npos);
}

TEST_CASE("profiles and symbol maps load through the C API") {
  Ctx ctx;
  REQUIRE(mb_ctx_load_profile(ctx, "literal.numeral=Real\n") == MB_OK);
  CHECK(mb_ctx_load_profile(ctx, "garbage") == MB_ERR_PARSE);

  REQUIRE(mb_ctx_load_symbol_map(ctx, "transc1.sin = sin\n") == MB_OK);
  Obj sin_term;
  REQUIRE(mb_parse(ctx, MB_FORMAT_POPCORN, "transc1.sin($x)", sin_term.out()) == MB_OK);
  char* out = nullptr;
  REQUIRE(mb_translate(ctx, sin_term, MB_FORMAT_SMT2, &out) == MB_OK);
  CHECK(take(out) == "(sin x)");
}
