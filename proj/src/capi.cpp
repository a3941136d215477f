#include "mathbridge.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "mathbridge/error.hpp"
#include "mathbridge/extensions.hpp"
#include "mathbridge/omxml.hpp"
#include "mathbridge/oracle.hpp"
#include "mathbridge/popcorn.hpp"
#include "mathbridge/smtlib.hpp"
#include "mathbridge/sorts.hpp"
#include "mathbridge/translate.hpp"

using namespace mathbridge;

struct mb_ctx {
  SymbolMap map = SymbolMap::standard();
  SignatureTable table = SignatureTable::standard();
  Interpretation interp;
  bool has_interp = false;
  DesugarStrategy strategy;
  TranslateOptions xopts;
  PopcornConfig popcorn;
  std::string last_error;
  std::string last_code;
  std::string warnings;
};

struct mb_obj {
  mb_obj_kind kind = MB_OBJ_TERM;
  mb_format source = MB_FORMAT_OMXML;
  OmDocument doc;  // term objects
  Script script;   // script objects
};

namespace {

template <typename F>
int guarded(mb_ctx* ctx, F&& fn) {
  ctx->last_error.clear();
  ctx->last_code.clear();
  ctx->warnings.clear();
  try {
    fn();
    return MB_OK;
  } catch (const Error& e) {
    ctx->last_error = e.what();
    ctx->last_code = e.code();
    return static_cast<int>(e.error_class());
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    ctx->last_code = "Internal";
    return MB_ERR_IO;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void append_warnings(mb_ctx* ctx, const std::vector<std::string>& ws) {
  for (const auto& w : ws) {
    if (!ctx->warnings.empty()) ctx->warnings += "\n";
    ctx->warnings += w;
  }
}

bool is_command_head(const std::string& tok) {
  static const std::set<std::string> commands = {
      "declare-sort", "declare-fun", "declare-const", "define-fun", "assert",
      "check-sat",    "get-value",   "get-model",     "maximize",   "minimize",
      "set-logic",    "exit",        "push",          "pop",        "set-option",
      "set-info",     "get-info",    "echo"};
  return commands.count(tok) > 0;
}

mb_obj* parse_input(mb_ctx* ctx, mb_format format, const std::string& text) {
  auto obj = std::make_unique<mb_obj>();
  obj->source = format;
  switch (format) {
    case MB_FORMAT_OMXML:
      obj->kind = MB_OBJ_TERM;
      obj->doc = parse_om_xml(text);
      break;
    case MB_FORMAT_POPCORN:
      obj->kind = MB_OBJ_TERM;
      obj->doc.root = parse_popcorn(text);
      break;
    case MB_FORMAT_SMT2: {
      std::vector<SExpr> forms = lex_sexpr(text);
      if (forms.empty()) throw_parse("Syntax", "empty input");
      bool script = forms.size() > 1;
      if (!script && forms[0].kind == SExpr::Kind::List && !forms[0].items.empty() &&
          forms[0].items[0].kind == SExpr::Kind::SymbolToken &&
          is_command_head(forms[0].items[0].text))
        script = true;
      if (script) {
        std::vector<std::string> ws;
        obj->kind = MB_OBJ_SCRIPT;
        obj->script = parse_script(text, &ws);
        append_warnings(ctx, ws);
      } else {
        obj->kind = MB_OBJ_TERM;
        SmtParseCtx pctx;  // lenient: free atoms become variables
        obj->doc.root = parse_smt_term(forms[0], pctx);
      }
      break;
    }
    default:
      throw Error(ErrorClass::Usage, "BadFormat", "unknown input format");
  }
  return obj.release();
}

std::string print_object(mb_ctx* ctx, const mb_obj* obj, mb_format format) {
  std::vector<std::string> ws;
  std::string out;
  if (obj->kind == MB_OBJ_SCRIPT) {
    if (format != MB_FORMAT_SMT2)
      throw Error(ErrorClass::Usage, "BadFormat", "scripts print as SMT-LIB only");
    out = print_smt(obj->script, &ws);
  } else {
    switch (format) {
      case MB_FORMAT_OMXML:
        out = print_om_xml(obj->doc, &ws);
        break;
      case MB_FORMAT_POPCORN:
        out = print_popcorn(obj->doc.root, ctx->popcorn, &ws);
        break;
      case MB_FORMAT_SMT2:
        out = print_smt(obj->doc.root, &ws);
        break;
      default:
        throw Error(ErrorClass::Usage, "BadFormat", "unknown output format");
    }
  }
  append_warnings(ctx, ws);
  return out;
}

bool om_side(mb_format f) { return f == MB_FORMAT_OMXML || f == MB_FORMAT_POPCORN; }

}  // namespace

extern "C" {

const char* mb_version(void) { return "0.1.0"; }

mb_ctx* mb_ctx_new(void) {
  try {
    return new mb_ctx();
  } catch (...) {
    return nullptr;
  }
}

void mb_ctx_free(mb_ctx* ctx) { delete ctx; }

const char* mb_ctx_error(const mb_ctx* ctx) { return ctx ? ctx->last_error.c_str() : ""; }
const char* mb_ctx_error_code(const mb_ctx* ctx) { return ctx ? ctx->last_code.c_str() : ""; }
const char* mb_ctx_warnings(const mb_ctx* ctx) { return ctx ? ctx->warnings.c_str() : ""; }

int mb_ctx_set_option(mb_ctx* ctx, const char* key, const char* value) {
  return guarded(ctx, [&] {
    std::string k = key ? key : "";
    std::string v = value ? value : "";
    auto usage = [&](const char* what) -> void {
      throw Error(ErrorClass::Usage, "BadOption",
                  std::string("option '") + k + "' takes " + what + ", got '" + v + "'");
    };
    if (k == "exists-unique") {
      if (v == "eq1")
        ctx->strategy.exists_unique = DesugarStrategy::ExistsUnique::Alternation;
      else if (v == "eq2")
        ctx->strategy.exists_unique = DesugarStrategy::ExistsUnique::TwoQuantifier;
      else
        usage("eq1 or eq2");
    } else if (k == "max-form") {
      if (v == "operator")
        ctx->strategy.max_form = DesugarStrategy::MaxForm::SetFunctionOperator;
      else if (v == "binder")
        ctx->strategy.max_form = DesugarStrategy::MaxForm::RestrictedBinder;
      else
        usage("operator or binder");
    } else if (k == "times-cd") {
      if (v == "arith1")
        ctx->xopts.times_cd = TranslateOptions::TimesCd::Arith1;
      else if (v == "arith2")
        ctx->xopts.times_cd = TranslateOptions::TimesCd::Arith2;
      else
        usage("arith1 or arith2");
    } else if (k == "popcorn-sugar") {
      if (v == "on")
        ctx->popcorn.sugar = PopcornConfig::Mode::Sugared;
      else if (v == "off")
        ctx->popcorn.sugar = PopcornConfig::Mode::Qualified;
      else
        usage("on or off");
    } else {
      throw Error(ErrorClass::Usage, "BadOption", "unknown option '" + k + "'");
    }
  });
}

int mb_ctx_load_symbol_map(mb_ctx* ctx, const char* text) {
  return guarded(ctx, [&] { ctx->map = SymbolMap::parse(text ? text : ""); });
}

int mb_ctx_load_sts(mb_ctx* ctx, const char* default_cd, const char* xml_text) {
  return guarded(ctx, [&] {
    for (auto& sig : load_sts(xml_text ? xml_text : "", default_cd ? default_cd : ""))
      ctx->table.add(std::move(sig));
  });
}

int mb_ctx_load_profile(mb_ctx* ctx, const char* text) {
  return guarded(ctx, [&] {
    ctx->table.profile = TheoryProfile::parse(text ? text : "");
    ctx->xopts.profile = ctx->table.profile;
  });
}

int mb_ctx_load_interpretation(mb_ctx* ctx, const char* text) {
  return guarded(ctx, [&] {
    ctx->interp = parse_interpretation(text ? text : "");
    ctx->has_interp = true;
  });
}

int mb_parse(mb_ctx* ctx, int format, const char* text, mb_obj** out) {
  return guarded(ctx, [&] {
    if (!text || !out)
      throw Error(ErrorClass::Usage, "BadArgument", "text and out must be non-null");
    *out = parse_input(ctx, static_cast<mb_format>(format), text);
  });
}

void mb_obj_free(mb_obj* obj) { delete obj; }

int mb_obj_get_kind(const mb_obj* obj) { return obj ? obj->kind : MB_OBJ_TERM; }

int mb_print(mb_ctx* ctx, const mb_obj* obj, int format, char** out) {
  return guarded(ctx, [&] {
    if (!obj || !out)
      throw Error(ErrorClass::Usage, "BadArgument", "obj and out must be non-null");
    *out = dup_string(print_object(ctx, obj, static_cast<mb_format>(format)));
  });
}

void mb_str_free(char* s) { std::free(s); }

int mb_translate(mb_ctx* ctx, const mb_obj* obj, int to_format, char** out) {
  return guarded(ctx, [&] {
    if (!obj || !out)
      throw Error(ErrorClass::Usage, "BadArgument", "obj and out must be non-null");
    auto to = static_cast<mb_format>(to_format);
    if (obj->kind == MB_OBJ_SCRIPT) {
      if (to != MB_FORMAT_SMT2)
        throw Error(ErrorClass::Translate, "Untranslatable",
                    "scripts have no OpenMath form");
      *out = dup_string(print_object(ctx, obj, to));
      return;
    }
    mb_obj staged = *obj;
    if (om_side(obj->source) && to == MB_FORMAT_SMT2) {
      staged.doc.root = om_to_smt(obj->doc.root, ctx->map, ctx->table);
    } else if (obj->source == MB_FORMAT_SMT2 && om_side(to)) {
      staged.doc.root = smt_to_om(obj->doc.root, ctx->map, ctx->xopts);
    }
    *out = dup_string(print_object(ctx, &staged, to));
  });
}

int mb_desugar(mb_ctx* ctx, const mb_obj* obj, mb_obj** out) {
  return guarded(ctx, [&] {
    if (!obj || !out)
      throw Error(ErrorClass::Usage, "BadArgument", "obj and out must be non-null");
    auto result = std::make_unique<mb_obj>(*obj);
    if (obj->kind == MB_OBJ_TERM) {
      const auto* b = as_bind(obj->doc.root);
      if (b && b->binder == syms::minmax2_argmaxone()) {
        result->kind = MB_OBJ_SCRIPT;
        result->source = MB_FORMAT_SMT2;
        result->script = argmaxone_to_script(obj->doc.root, ctx->map, ctx->table, ctx->xopts);
        result->doc = OmDocument{};
      } else {
        Term staged = convert_max_form(obj->doc.root, ctx->strategy.max_form);
        result->doc.root = desugar_all(staged, ctx->strategy);
      }
    }
    *out = result.release();
  });
}

int mb_check_sorts(mb_ctx* ctx, const mb_obj* obj, char** sort_out) {
  return guarded(ctx, [&] {
    if (!obj || !sort_out)
      throw Error(ErrorClass::Usage, "BadArgument", "obj and sort_out must be non-null");
    if (obj->kind == MB_OBJ_SCRIPT) {
      SignatureTable scoped = ctx->table;
      scoped.absorb_script_declarations(obj->script);
      for (const auto& cmd : obj->script.commands) {
        if (cmd.kind == Command::Kind::Assert) {
          Sort s = check_sorts(cmd.term, scoped);
          if (s != Sort::simple("Bool"))
            throw Error(ErrorClass::Sort, "SortMismatch",
                        "assertion checks to " + s.str() + ", expected Bool");
        }
        if (cmd.kind == Command::Kind::Maximize || cmd.kind == Command::Kind::Minimize)
          check_sorts(cmd.term, scoped);
      }
      *sort_out = dup_string("ok");
      return;
    }
    Sort s = check_sorts(obj->doc.root, ctx->table);
    *sort_out = dup_string(s.str());
  });
}

int mb_eval(mb_ctx* ctx, const mb_obj* obj, char** value_out) {
  return guarded(ctx, [&] {
    if (!obj || !value_out)
      throw Error(ErrorClass::Usage, "BadArgument", "obj and value_out must be non-null");
    if (!ctx->has_interp)
      throw Error(ErrorClass::Eval, "NoInterpretation",
                  "load an interpretation before evaluating");
    if (obj->kind == MB_OBJ_SCRIPT) {
      SolverResult r = eval_script(obj->script, ctx->interp);
      *value_out = dup_string(print_smt(r));
      return;
    }
    Value v = eval(obj->doc.root, ctx->interp);
    *value_out = dup_string(v.str());
  });
}

int mb_alpha_equal(mb_ctx* ctx, const mb_obj* a, const mb_obj* b, int* out) {
  return guarded(ctx, [&] {
    if (!a || !b || !out)
      throw Error(ErrorClass::Usage, "BadArgument", "arguments must be non-null");
    if (a->kind != MB_OBJ_TERM || b->kind != MB_OBJ_TERM)
      throw Error(ErrorClass::Usage, "BadArgument", "alpha comparison needs two terms");
    *out = alpha_equal(a->doc.root, b->doc.root) ? 1 : 0;
  });
}

}  // extern "C"
