#include "xml_reader.hpp"

#include <cctype>
#include <cstring>

namespace mathbridge::xml {

namespace {

struct Reader {
  const std::string& s;
  size_t i = 0;
  size_t line = 1, col = 1;

  explicit Reader(const std::string& text) : s(text) {}

  bool eof() const { return i >= s.size(); }
  char peek() const { return s[i]; }

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

  [[noreturn]] void fail(const std::string& msg) const {
    throw_parse("XmlSyntax", msg, pos());
  }

  bool starts_with(const char* p) const { return s.compare(i, strlen(p), p) == 0; }

  void expect(char c) {
    if (eof() || peek() != c) fail(std::string("expected '") + c + "'");
    get();
  }

  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) get();
  }

  void skip(size_t n) {
    for (size_t k = 0; k < n && !eof(); ++k) get();
  }

  std::string name_token() {
    std::string out;
    while (!eof()) {
      char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == ':' ||
          c == '.')
        out.push_back(get());
      else
        break;
    }
    if (out.empty()) fail("expected a name");
    return out;
  }

  std::string entity() {
    // positioned on '&'
    get();
    std::string ent;
    while (!eof() && peek() != ';') {
      ent.push_back(get());
      if (ent.size() > 8) fail("unterminated entity reference");
    }
    if (eof()) fail("unterminated entity reference");
    get();  // ';'
    if (ent == "lt") return "<";
    if (ent == "gt") return ">";
    if (ent == "amp") return "&";
    if (ent == "quot") return "\"";
    if (ent == "apos") return "'";
    if (!ent.empty() && ent[0] == '#') {
      long code = 0;
      try {
        code = (ent.size() > 1 && (ent[1] == 'x' || ent[1] == 'X'))
                   ? std::stol(ent.substr(2), nullptr, 16)
                   : std::stol(ent.substr(1), nullptr, 10);
      } catch (...) {
        fail("bad character reference &" + ent + ";");
      }
      if (code <= 0 || code > 0x10FFFF) fail("character reference out of range");
      // Encode as UTF-8.
      std::string out;
      unsigned cp = static_cast<unsigned>(code);
      if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
      } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
      } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
      } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
      }
      return out;
    }
    fail("unknown entity &" + ent + ";");
  }

  std::string attr_value() {
    char quote = peek();
    if (quote != '"' && quote != '\'') fail("expected quoted attribute value");
    get();
    std::string out;
    while (!eof() && peek() != quote) {
      if (peek() == '&')
        out += entity();
      else
        out.push_back(get());
    }
    if (eof()) fail("unterminated attribute value");
    get();
    return out;
  }

  void skip_misc() {
    // whitespace, comments, processing instructions / xml decl
    for (;;) {
      skip_ws();
      if (starts_with("<!--")) {
        skip(4);
        while (!eof() && !starts_with("-->")) get();
        if (eof()) fail("unterminated comment");
        skip(3);
      } else if (starts_with("<?")) {
        skip(2);
        while (!eof() && !starts_with("?>")) get();
        if (eof()) fail("unterminated processing instruction");
        skip(2);
      } else {
        return;
      }
    }
  }

  Element element() {
    SourcePos start = pos();
    expect('<');
    Element el;
    el.pos = start;
    el.name = name_token();
    for (;;) {
      skip_ws();
      if (eof()) fail("unterminated start tag");
      if (peek() == '/') {
        get();
        expect('>');
        return el;  // self-closing
      }
      if (peek() == '>') {
        get();
        break;
      }
      std::string key = name_token();
      skip_ws();
      expect('=');
      skip_ws();
      el.attrs.emplace_back(key, attr_value());
    }
    // content
    size_t inner_begin = i;
    for (;;) {
      if (eof()) fail("missing end tag for <" + el.name + ">");
      if (peek() == '<') {
        if (starts_with("</")) {
          el.raw_inner = s.substr(inner_begin, i - inner_begin);
          skip(2);
          std::string close = name_token();
          if (close != el.name)
            fail("mismatched end tag </" + close + "> for <" + el.name + ">");
          skip_ws();
          expect('>');
          return el;
        }
        if (starts_with("<!--")) {
          skip(4);
          while (!eof() && !starts_with("-->")) get();
          if (eof()) fail("unterminated comment");
          skip(3);
          continue;
        }
        el.children.push_back(element());
      } else if (peek() == '&') {
        el.text += entity();
      } else {
        el.text.push_back(get());
      }
    }
  }
};

}  // namespace

Element parse_document(const std::string& text) {
  Reader r(text);
  r.skip_misc();
  if (r.eof()) r.fail("empty document");
  if (r.peek() != '<') r.fail("expected an element");
  Element root = r.element();
  r.skip_misc();
  if (!r.eof()) r.fail("trailing content after root element");
  return root;
}

std::string escape_text(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20 && c != '\n' && c != '\t' && c != '\r')
          out += "&#" + std::to_string(static_cast<unsigned char>(c)) + ";";
        else
          out.push_back(c);
    }
  }
  return out;
}

std::string escape_attr(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20)
          out += "&#" + std::to_string(static_cast<unsigned char>(c)) + ";";
        else
          out.push_back(c);
    }
  }
  return out;
}

}  // namespace mathbridge::xml
