/*
 * mathbridge C API: translation between OpenMath (XML and POPCORN) and
 * SMT-LIB, extension-constructor desugaring, sort checking, and a
 * finite-domain evaluator.
 *
 * All functions returning int yield MB_OK (0) on success or an mb_status
 * error code; the message for the last failure on a context is available
 * via mb_ctx_error(). Objects are opaque handles owned by the caller and
 * released with the matching _free function. A context is not thread-safe;
 * use one per thread.
 */
#ifndef MATHBRIDGE_H
#define MATHBRIDGE_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct mb_ctx mb_ctx;
typedef struct mb_obj mb_obj;

typedef enum mb_status {
  MB_OK = 0,
  MB_ERR_IO = 1,
  MB_ERR_PARSE = 2,
  MB_ERR_TRANSLATE = 3,
  MB_ERR_EXTENSION = 4,
  MB_ERR_SORT = 5,
  MB_ERR_EVAL = 6,
  MB_ERR_USAGE = 7
} mb_status;

typedef enum mb_format {
  MB_FORMAT_OMXML = 0,
  MB_FORMAT_POPCORN = 1,
  MB_FORMAT_SMT2 = 2
} mb_format;

typedef enum mb_obj_kind {
  MB_OBJ_TERM = 0,
  MB_OBJ_SCRIPT = 1
} mb_obj_kind;

const char* mb_version(void);

mb_ctx* mb_ctx_new(void);
void mb_ctx_free(mb_ctx* ctx);

/* Message for the most recent failure on this context; empty string if none. */
const char* mb_ctx_error(const mb_ctx* ctx);

/* Stable machine tag for the most recent failure (e.g. "XmlSyntax"). */
const char* mb_ctx_error_code(const mb_ctx* ctx);

/* Options:
 *   "exists-unique"  : "eq1" (default) | "eq2"
 *   "max-form"       : "operator" (default) | "binder"
 *   "times-cd"       : "arith1" (default) | "arith2"
 *   "popcorn-sugar"  : "off" (default) | "on"
 */
int mb_ctx_set_option(mb_ctx* ctx, const char* key, const char* value);

/* Configuration inputs; each call replaces/extends the previous state. */
int mb_ctx_load_symbol_map(mb_ctx* ctx, const char* text);
int mb_ctx_load_sts(mb_ctx* ctx, const char* default_cd, const char* xml_text);
int mb_ctx_load_profile(mb_ctx* ctx, const char* text);
int mb_ctx_load_interpretation(mb_ctx* ctx, const char* text);

/* Parsing and printing. SMT-LIB input containing commands parses as a script;
 * a single term parses as a term. */
int mb_parse(mb_ctx* ctx, int format, const char* text, mb_obj** out);
void mb_obj_free(mb_obj* obj);
int mb_obj_get_kind(const mb_obj* obj);
int mb_print(mb_ctx* ctx, const mb_obj* obj, int format, char** out);
void mb_str_free(char* s);

/* Pipeline operations. */
int mb_translate(mb_ctx* ctx, const mb_obj* obj, int to_format, char** out);
int mb_desugar(mb_ctx* ctx, const mb_obj* obj, mb_obj** out);
int mb_check_sorts(mb_ctx* ctx, const mb_obj* obj, char** sort_out);
int mb_eval(mb_ctx* ctx, const mb_obj* obj, char** value_out);
int mb_alpha_equal(mb_ctx* ctx, const mb_obj* a, const mb_obj* b, int* out);

/* Warnings emitted by the last operation, one per line; empty if none. */
const char* mb_ctx_warnings(const mb_ctx* ctx);

#ifdef __cplusplus
}
#endif

#endif
