// mathbridge command-line front end. Deliberately a pure client of the C API
// in mathbridge.h: everything it does, an FFI user can do.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mathbridge.h"

namespace {

struct CtxDeleter {
  void operator()(mb_ctx* c) const { mb_ctx_free(c); }
};
struct ObjDeleter {
  void operator()(mb_obj* o) const { mb_obj_free(o); }
};
using CtxPtr = std::unique_ptr<mb_ctx, CtxDeleter>;
using ObjPtr = std::unique_ptr<mb_obj, ObjDeleter>;

struct Options {
  std::vector<std::string> inputs;
  std::string from_format = "auto";
  std::string to_format;
  std::string output_path;
  bool sugar = false;
  std::string exists_unique = "eq1";
  std::string max_form = "operator";
  std::string times_cd = "arith1";
  std::string map_path;
  std::vector<std::string> sts_paths;
  std::string profile_path;
  std::string interp_path;
};

int fail(int code, const std::string& msg) {
  std::cerr << "mathbridge: " << msg << "\n";
  return code;
}

int fail_ctx(int code, mb_ctx* ctx) {
  std::cerr << "mathbridge: error";
  const char* tag = mb_ctx_error_code(ctx);
  if (tag && *tag) std::cerr << " [" << tag << "]";
  std::cerr << ": " << mb_ctx_error(ctx) << "\n";
  return code;
}

bool read_file(const std::string& path, std::string& out) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    out = ss.str();
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int detect_format(const std::string& path, const std::string& flag, int& out) {
  if (flag == "omxml") {
    out = MB_FORMAT_OMXML;
  } else if (flag == "popcorn") {
    out = MB_FORMAT_POPCORN;
  } else if (flag == "smt2") {
    out = MB_FORMAT_SMT2;
  } else if (flag == "auto") {
    if (ends_with(path, ".om.xml") || ends_with(path, ".omxml") || ends_with(path, ".xml"))
      out = MB_FORMAT_OMXML;
    else if (ends_with(path, ".pop"))
      out = MB_FORMAT_POPCORN;
    else if (ends_with(path, ".smt2"))
      out = MB_FORMAT_SMT2;
    else
      return 1;
  } else {
    return 1;
  }
  return 0;
}

void flush_warnings(mb_ctx* ctx) {
  const char* w = mb_ctx_warnings(ctx);
  if (w && *w) {
    std::istringstream lines(w);
    std::string line;
    while (std::getline(lines, line)) std::cerr << "mathbridge: warning: " << line << "\n";
  }
}

int setup_context(const Options& opt, mb_ctx* ctx) {
  std::string map_path = opt.map_path;
  if (map_path.empty()) {
    if (const char* env = std::getenv("MATHBRIDGE_MAP")) map_path = env;
  }
  if (!map_path.empty()) {
    std::string text;
    if (!read_file(map_path, text)) return fail(1, "cannot read symbol map " + map_path);
    if (mb_ctx_load_symbol_map(ctx, text.c_str()) != MB_OK) return fail_ctx(2, ctx);
  }
  for (const auto& sts : opt.sts_paths) {
    std::string text;
    if (!read_file(sts, text)) return fail(1, "cannot read STS file " + sts);
    // the content dictionary defaults to the file stem, as in arith2.sts
    std::string stem = sts;
    if (auto slash = stem.find_last_of('/'); slash != std::string::npos)
      stem = stem.substr(slash + 1);
    if (auto dot = stem.find('.'); dot != std::string::npos) stem = stem.substr(0, dot);
    if (mb_ctx_load_sts(ctx, stem.c_str(), text.c_str()) != MB_OK) return fail_ctx(2, ctx);
  }
  if (!opt.profile_path.empty()) {
    std::string text;
    if (!read_file(opt.profile_path, text))
      return fail(1, "cannot read profile " + opt.profile_path);
    if (mb_ctx_load_profile(ctx, text.c_str()) != MB_OK) return fail_ctx(2, ctx);
  }
  if (!opt.interp_path.empty()) {
    std::string text;
    if (!read_file(opt.interp_path, text))
      return fail(1, "cannot read interpretation " + opt.interp_path);
    if (mb_ctx_load_interpretation(ctx, text.c_str()) != MB_OK) return fail_ctx(2, ctx);
  }
  if (mb_ctx_set_option(ctx, "exists-unique", opt.exists_unique.c_str()) != MB_OK)
    return fail_ctx(7, ctx);
  if (mb_ctx_set_option(ctx, "max-form", opt.max_form.c_str()) != MB_OK)
    return fail_ctx(7, ctx);
  if (mb_ctx_set_option(ctx, "times-cd", opt.times_cd.c_str()) != MB_OK)
    return fail_ctx(7, ctx);
  if (mb_ctx_set_option(ctx, "popcorn-sugar", opt.sugar ? "on" : "off") != MB_OK)
    return fail_ctx(7, ctx);
  return 0;
}

int status_exit(int status) { return status == MB_OK ? 0 : status; }

enum class Mode { Translate, Desugar, Check, Eval };

int run(Mode mode, const Options& opt) {
  CtxPtr ctx(mb_ctx_new());
  if (!ctx) return fail(1, "out of memory");
  if (int rc = setup_context(opt, ctx.get())) return rc;

  std::ostream* out = &std::cout;
  std::ofstream out_file;
  if (!opt.output_path.empty()) {
    out_file.open(opt.output_path, std::ios::binary);
    if (!out_file) return fail(1, "cannot write " + opt.output_path);
    out = &out_file;
  }

  for (const auto& input : opt.inputs) {
    std::string text;
    if (!read_file(input, text)) return fail(1, "cannot read " + input);
    int format = 0;
    if (detect_format(input, opt.from_format, format))
      return fail(7, "cannot detect the format of " + input + "; use --from");

    mb_obj* raw = nullptr;
    int rc = mb_parse(ctx.get(), format, text.c_str(), &raw);
    flush_warnings(ctx.get());
    if (rc != MB_OK) return status_exit(fail_ctx(rc, ctx.get()));
    ObjPtr obj(raw);

    int to = format;
    if (!opt.to_format.empty()) {
      if (detect_format("", opt.to_format, to))
        return fail(7, "unknown output format " + opt.to_format);
    }

    std::string payload;
    switch (mode) {
      case Mode::Translate: {
        char* s = nullptr;
        rc = mb_translate(ctx.get(), obj.get(), to, &s);
        flush_warnings(ctx.get());
        if (rc != MB_OK) return status_exit(fail_ctx(rc, ctx.get()));
        payload = s;
        mb_str_free(s);
        break;
      }
      case Mode::Desugar: {
        mb_obj* lowered_raw = nullptr;
        rc = mb_desugar(ctx.get(), obj.get(), &lowered_raw);
        flush_warnings(ctx.get());
        if (rc != MB_OK) return status_exit(fail_ctx(rc, ctx.get()));
        ObjPtr lowered(lowered_raw);
        int target = mb_obj_get_kind(lowered.get()) == MB_OBJ_SCRIPT ? MB_FORMAT_SMT2 : to;
        char* s = nullptr;
        rc = mb_translate(ctx.get(), lowered.get(), target, &s);
        flush_warnings(ctx.get());
        if (rc != MB_OK) return status_exit(fail_ctx(rc, ctx.get()));
        payload = s;
        mb_str_free(s);
        break;
      }
      case Mode::Check: {
        char* s = nullptr;
        rc = mb_check_sorts(ctx.get(), obj.get(), &s);
        flush_warnings(ctx.get());
        if (rc != MB_OK) return status_exit(fail_ctx(rc, ctx.get()));
        payload = s;
        mb_str_free(s);
        break;
      }
      case Mode::Eval: {
        char* s = nullptr;
        rc = mb_eval(ctx.get(), obj.get(), &s);
        flush_warnings(ctx.get());
        if (rc != MB_OK) return status_exit(fail_ctx(rc, ctx.get()));
        payload = s;
        mb_str_free(s);
        break;
      }
    }
    *out << payload;
    if (payload.empty() || payload.back() != '\n') *out << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OpenMath / SMT-LIB translation toolkit"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* cmd, bool needs_to) {
    cmd->add_option("inputs", opt.inputs, "input files ('-' for stdin)")->required();
    cmd->add_option("--from", opt.from_format, "input format: omxml|popcorn|smt2|auto");
    auto* to = cmd->add_option("--to", opt.to_format, "output format: omxml|popcorn|smt2");
    if (needs_to) to->required();
    cmd->add_option("-o,--output", opt.output_path, "write output here instead of stdout");
    cmd->add_flag("--sugar", opt.sugar, "sugared POPCORN output");
    cmd->add_option("--exists-unique", opt.exists_unique, "eq1|eq2 desugaring strategy");
    cmd->add_option("--max-form", opt.max_form, "operator|binder max normalization");
    cmd->add_option("--times-cd", opt.times_cd, "arith1|arith2 target for '*'");
    cmd->add_option("--map", opt.map_path, "symbol map file (or $MATHBRIDGE_MAP)");
    cmd->add_option("--sts", opt.sts_paths, "STS signature files");
    cmd->add_option("--profile", opt.profile_path, "theory profile file");
    cmd->add_option("--interp", opt.interp_path, "interpretation file for eval");
  };

  auto* translate = app.add_subcommand("translate", "convert between the three syntaxes");
  add_common(translate, true);
  auto* desugar = app.add_subcommand("desugar", "lower extension constructors");
  add_common(desugar, false);
  auto* check = app.add_subcommand("check", "sort-check a term or script");
  add_common(check, false);
  auto* eval = app.add_subcommand("eval", "evaluate under a finite interpretation");
  add_common(eval, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 7;
  }

  if (translate->parsed()) return run(Mode::Translate, opt);
  if (desugar->parsed()) return run(Mode::Desugar, opt);
  if (check->parsed()) return run(Mode::Check, opt);
  if (eval->parsed()) return run(Mode::Eval, opt);
  return 7;
}
