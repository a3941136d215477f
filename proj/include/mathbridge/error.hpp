#ifndef MATHBRIDGE_ERROR_HPP
#define MATHBRIDGE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mathbridge {

// Error classes double as process exit codes and C API status values.
enum class ErrorClass {
  Io = 1,
  Parse = 2,
  Translate = 3,
  Extension = 4,
  Sort = 5,
  Eval = 6,
  Usage = 7,
};

struct SourcePos {
  size_t line = 0;  // 1-based; 0 means "no position"
  size_t col = 0;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, std::string code, const std::string& message)
      : std::runtime_error(message), cls_(cls), code_(std::move(code)) {}

  Error(ErrorClass cls, std::string code, const std::string& message, SourcePos pos)
      : std::runtime_error(format(message, pos)), cls_(cls), code_(std::move(code)), pos_(pos) {}

  ErrorClass error_class() const { return cls_; }
  // Stable machine-readable tag, e.g. "XmlSyntax" or "DuplicateLetName".
  const std::string& code() const { return code_; }
  SourcePos pos() const { return pos_; }

 private:
  static std::string format(const std::string& message, SourcePos pos) {
    if (pos.line == 0) return message;
    return std::to_string(pos.line) + ":" + std::to_string(pos.col) + ": " + message;
  }

  ErrorClass cls_;
  std::string code_;
  SourcePos pos_{};
};

[[noreturn]] inline void throw_parse(const std::string& code, const std::string& msg,
                                     SourcePos pos = {}) {
  throw Error(ErrorClass::Parse, code, msg, pos);
}

}  // namespace mathbridge

#endif
