#include "mathbridge/omxml.hpp"

#include <cctype>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <set>

#include "mathbridge/error.hpp"
#include "xml_reader.hpp"

namespace mathbridge {

namespace {

constexpr const char* kOmNamespace = "http://www.openmath.org/OpenMath";

[[noreturn]] void fail(const std::string& code, const std::string& msg, SourcePos pos = {}) {
  throw_parse(code, msg, pos);
}

std::string trimmed(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// ---- base64 (OMB payloads) --------------------------------------------------

const char* kB64 = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string base64_encode(const std::string& raw) {
  std::string out;
  size_t i = 0;
  while (i + 2 < raw.size()) {
    unsigned v = (static_cast<unsigned char>(raw[i]) << 16) |
                 (static_cast<unsigned char>(raw[i + 1]) << 8) |
                 static_cast<unsigned char>(raw[i + 2]);
    out.push_back(kB64[(v >> 18) & 63]);
    out.push_back(kB64[(v >> 12) & 63]);
    out.push_back(kB64[(v >> 6) & 63]);
    out.push_back(kB64[v & 63]);
    i += 3;
  }
  size_t rest = raw.size() - i;
  if (rest == 1) {
    unsigned v = static_cast<unsigned char>(raw[i]) << 16;
    out.push_back(kB64[(v >> 18) & 63]);
    out.push_back(kB64[(v >> 12) & 63]);
    out += "==";
  } else if (rest == 2) {
    unsigned v = (static_cast<unsigned char>(raw[i]) << 16) |
                 (static_cast<unsigned char>(raw[i + 1]) << 8);
    out.push_back(kB64[(v >> 18) & 63]);
    out.push_back(kB64[(v >> 12) & 63]);
    out.push_back(kB64[(v >> 6) & 63]);
    out.push_back('=');
  }
  return out;
}

std::string base64_decode(const std::string& text, SourcePos pos) {
  int rev[256];
  std::memset(rev, -1, sizeof rev);
  for (int k = 0; k < 64; ++k) rev[static_cast<unsigned char>(kB64[k])] = k;
  std::string out;
  unsigned acc = 0;
  int bits = 0;
  int pad = 0;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '=') {
      ++pad;
      continue;
    }
    if (pad > 0 || rev[static_cast<unsigned char>(c)] < 0)
      fail("XmlSyntax", "invalid base64 in OMB", pos);
    acc = (acc << 6) | static_cast<unsigned>(rev[static_cast<unsigned char>(c)]);
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out.push_back(static_cast<char>((acc >> bits) & 0xFF));
    }
  }
  return out;
}

// ---- binary64 <-> attribute spelling ----------------------------------------

std::string float_to_dec(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

bool dec_round_trips(double v) {
  if (std::isnan(v) || std::isinf(v)) return false;
  return true;  // to_chars shortest form always reparses exactly
}

std::string float_to_hex(double v) {
  uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  char buf[17];
  static const char* digits = "0123456789ABCDEF";
  for (int k = 15; k >= 0; --k) {
    buf[k] = digits[bits & 0xF];
    bits >>= 4;
  }
  return std::string(buf, 16);
}

double hex_to_float(const std::string& hex, SourcePos pos) {
  if (hex.size() != 16) fail("XmlSyntax", "OMF hex attribute must be 16 hex digits", pos);
  uint64_t bits = 0;
  for (char c : hex) {
    int d;
    if (c >= '0' && c <= '9')
      d = c - '0';
    else if (c >= 'a' && c <= 'f')
      d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F')
      d = c - 'A' + 10;
    else
      fail("XmlSyntax", "bad hex digit in OMF", pos);
    bits = (bits << 4) | static_cast<uint64_t>(d);
  }
  double v;
  std::memcpy(&v, &bits, sizeof v);
  return v;
}

// ---- sorts as attribution values ---------------------------------------------
// Sort names follow the Fig. 2 convention: OMV for a sort name, OMA for a
// parametric sort application.

Term sort_to_term(const Sort& s) {
  if (s.args.empty()) return Term::var(s.name);
  std::vector<Term> args;
  for (const auto& a : s.args) args.push_back(sort_to_term(a));
  return Term::apply(Term::var(s.name), std::move(args));
}

std::optional<Sort> term_to_sort(const Term& t) {
  if (const auto* v = as_var(t)) return Sort::simple(v->name);
  if (const auto* a = as_apply(t)) {
    const auto* head = as_var(a->head);
    if (!head) return std::nullopt;
    Sort s = Sort::simple(head->name);
    for (const auto& x : a->args) {
      auto sub = term_to_sort(x);
      if (!sub) return std::nullopt;
      s.args.push_back(*sub);
    }
    return s;
  }
  return std::nullopt;
}

// ---- parsing ------------------------------------------------------------------

Term parse_object(const xml::Element& el);

Symbol parse_oms(const xml::Element& el) {
  const std::string* cd = el.attr("cd");
  const std::string* name = el.attr("name");
  if (!cd || !name) fail("XmlSyntax", "OMS requires cd and name attributes", el.pos);
  if (cd->empty() || name->empty())
    fail("XmlSyntax", "OMS cd/name must be non-empty", el.pos);
  if (*cd == "smt") return syms::smt(*name);
  return syms::om(*cd, *name);
}

BoundVar parse_bound_var(const xml::Element& el) {
  if (el.name == "OMV") {
    const std::string* name = el.attr("name");
    if (!name || name->empty()) fail("XmlSyntax", "OMV requires a name attribute", el.pos);
    return BoundVar{*name, std::nullopt};
  }
  if (el.name == "OMATTR") {
    // Recognize the sts.sort channel; anything else on a bound variable is
    // stripped (attributions on bound-variable names are not retained).
    Term attributed = parse_object(el);
    const auto* at = as_attr(attributed);
    Term base = strip_attributions(attributed);
    const auto* v = as_var(base);
    if (!v) fail("XmlSyntax", "OMATTR inside OMBVAR must wrap an OMV", el.pos);
    BoundVar bv{v->name, std::nullopt};
    if (at) {
      for (const auto& [key, value] : at->pairs) {
        if (key == syms::sts_sort()) {
          auto s = term_to_sort(value);
          if (!s) fail("XmlSyntax", "unreadable sort attribution on bound variable", el.pos);
          bv.sort = *s;
        }
      }
    }
    return bv;
  }
  fail("UnknownElement", "unexpected <" + el.name + "> inside OMBVAR", el.pos);
}

Term parse_object(const xml::Element& el) {
  const std::string& n = el.name;
  if (n == "OMS") return Term::sym(parse_oms(el));
  if (n == "OMV") {
    const std::string* name = el.attr("name");
    if (!name || name->empty()) fail("XmlSyntax", "OMV requires a name attribute", el.pos);
    return Term::var(*name);
  }
  if (n == "OMI") {
    std::string digits = trimmed(el.text);
    try {
      return Term::lit(Literal::integer(digits));
    } catch (const Error&) {
      fail("BadInteger", "bad OMI content: '" + digits + "'", el.pos);
    }
  }
  if (n == "OMF") {
    const std::string* dec = el.attr("dec");
    const std::string* hex = el.attr("hex");
    if (dec) {
      errno = 0;
      char* end = nullptr;
      double v = std::strtod(dec->c_str(), &end);
      if (end == dec->c_str() || *end != '\0')
        fail("XmlSyntax", "bad OMF dec attribute: '" + *dec + "'", el.pos);
      return Term::lit(Literal::float64(v));
    }
    if (hex) return Term::lit(Literal::float64(hex_to_float(*hex, el.pos)));
    fail("XmlSyntax", "OMF requires a dec or hex attribute", el.pos);
  }
  if (n == "OMSTR") return Term::lit(Literal::string(el.text));
  if (n == "OMB") return Term::lit(Literal::bytes(base64_decode(el.text, el.pos)));
  if (n == "OMA") {
    if (el.children.empty()) fail("EmptyApplication", "OMA with no children", el.pos);
    Term head = parse_object(el.children[0]);
    std::vector<Term> args;
    for (size_t k = 1; k < el.children.size(); ++k) args.push_back(parse_object(el.children[k]));
    return Term::apply(std::move(head), std::move(args));
  }
  if (n == "OMBIND") {
    if (el.children.size() < 3 || el.children.size() > 4)
      fail("XmlSyntax", "OMBIND expects binder, OMBVAR, body and optional condition", el.pos);
    if (el.children[0].name != "OMS")
      fail("UnknownElement", "OMBIND binder must be an OMS", el.children[0].pos);
    Symbol binder = parse_oms(el.children[0]);
    if (el.children[1].name != "OMBVAR")
      fail("MissingBvar", "OMBIND without OMBVAR", el.pos);
    const auto& bvar = el.children[1];
    if (bvar.children.empty()) fail("MissingBvar", "OMBVAR lists no variables", bvar.pos);
    std::vector<BoundVar> vars;
    std::set<std::string> seen;
    for (const auto& c : bvar.children) {
      BoundVar bv = parse_bound_var(c);
      if (!seen.insert(bv.name).second)
        fail("DuplicateBoundVar", "repeated bound variable '" + bv.name + "' in OMBVAR", c.pos);
      vars.push_back(std::move(bv));
    }
    Term body = parse_object(el.children[2]);
    if (el.children.size() == 4) {
      Term condition = parse_object(el.children[3]);
      return Term::bind_conditional(binder, std::move(vars), std::move(body),
                                    std::move(condition));
    }
    return Term::bind(binder, std::move(vars), std::move(body));
  }
  if (n == "OMATTR") {
    if (el.children.size() != 2 || el.children[0].name != "OMATP")
      fail("XmlSyntax", "OMATTR expects OMATP followed by one object", el.pos);
    const auto& atp = el.children[0];
    if (atp.children.empty() || atp.children.size() % 2 != 0)
      fail("XmlSyntax", "OMATP expects symbol/object pairs", atp.pos);
    std::vector<std::pair<Symbol, Term>> pairs;
    for (size_t k = 0; k < atp.children.size(); k += 2) {
      if (atp.children[k].name != "OMS")
        fail("XmlSyntax", "OMATP keys must be OMS", atp.children[k].pos);
      pairs.emplace_back(parse_oms(atp.children[k]), parse_object(atp.children[k + 1]));
    }
    return Term::attributed(std::move(pairs), parse_object(el.children[1]));
  }
  if (n == "OME") {
    if (el.children.empty() || el.children[0].name != "OMS")
      fail("XmlSyntax", "OME expects an OMS followed by arguments", el.pos);
    Symbol s = parse_oms(el.children[0]);
    std::vector<Term> args;
    for (size_t k = 1; k < el.children.size(); ++k) args.push_back(parse_object(el.children[k]));
    return Term::error_term(s, std::move(args));
  }
  if (n == "OMFOREIGN") {
    const std::string* enc = el.attr("encoding");
    return Term::foreign(enc ? *enc : "", el.raw_inner);
  }
  fail("UnknownElement", "unknown OpenMath element <" + n + ">", el.pos);
}

// ---- printing -------------------------------------------------------------------

struct Printer {
  std::string out;
  std::vector<std::string>* warnings;

  void indent(int depth) { out.append(static_cast<size_t>(depth) * 2, ' '); }

  void line(int depth, const std::string& s) {
    indent(depth);
    out += s;
    out += "\n";
  }

  void warn(const std::string& msg) {
    if (warnings) warnings->push_back(msg);
  }

  std::string oms(const Symbol& s) {
    return "<OMS cd=\"" + xml::escape_attr(s.cd) + "\" name=\"" + xml::escape_attr(s.name) +
           "\"/>";
  }

  void bound_var(const BoundVar& bv, int depth) {
    if (!bv.sort) {
      line(depth, "<OMV name=\"" + xml::escape_attr(bv.name) + "\"/>");
      return;
    }
    line(depth, "<OMATTR>");
    line(depth + 1, "<OMATP>");
    line(depth + 2, oms(syms::sts_sort()));
    object(sort_to_term(*bv.sort), depth + 2);
    line(depth + 1, "</OMATP>");
    line(depth + 1, "<OMV name=\"" + xml::escape_attr(bv.name) + "\"/>");
    line(depth, "</OMATTR>");
  }

  void object(const Term& t, int depth) {
    if (const auto* s = as_sym(t)) {
      line(depth, oms(s->symbol));
    } else if (const auto* v = as_var(t)) {
      line(depth, "<OMV name=\"" + xml::escape_attr(v->name) + "\"/>");
    } else if (const auto* l = as_lit(t)) {
      literal(l->value, depth);
    } else if (const auto* a = as_apply(t)) {
      if (a->args.empty()) warn("printing a nullary application (OMA with a single child)");
      line(depth, "<OMA>");
      object(a->head, depth + 1);
      for (const auto& x : a->args) object(x, depth + 1);
      line(depth, "</OMA>");
    } else if (const auto* b = as_bind(t)) {
      line(depth, "<OMBIND>");
      line(depth + 1, oms(b->binder));
      line(depth + 1, "<OMBVAR>");
      for (const auto& bv : b->vars) bound_var(bv, depth + 2);
      line(depth + 1, "</OMBVAR>");
      object(b->body, depth + 1);
      if (b->condition) object(*b->condition, depth + 1);
      line(depth, "</OMBIND>");
    } else if (const auto* at = as_attr(t)) {
      line(depth, "<OMATTR>");
      line(depth + 1, "<OMATP>");
      for (const auto& [k, val] : at->pairs) {
        line(depth + 2, oms(k));
        object(val, depth + 2);
      }
      line(depth + 1, "</OMATP>");
      object(at->base, depth + 1);
      line(depth, "</OMATTR>");
    } else if (const auto* e = as_error(t)) {
      line(depth, "<OME>");
      line(depth + 1, oms(e->symbol));
      for (const auto& x : e->args) object(x, depth + 1);
      line(depth, "</OME>");
    } else if (const auto* f = as_foreign(t)) {
      if (f->blob.find("</OMFOREIGN>") != std::string::npos)
        throw Error(ErrorClass::Parse, "Unprintable",
                    "foreign blob cannot be embedded in OMFOREIGN");
      std::string open = "<OMFOREIGN";
      if (!f->encoding.empty()) open += " encoding=\"" + xml::escape_attr(f->encoding) + "\"";
      line(depth, open + ">" + f->blob + "</OMFOREIGN>");
    }
  }

  void literal(const Literal& l, int depth) {
    switch (l.kind) {
      case LiteralKind::Integer:
        line(depth, "<OMI>" + l.text + "</OMI>");
        return;
      case LiteralKind::Float64:
        if (dec_round_trips(l.f64))
          line(depth, "<OMF dec=\"" + float_to_dec(l.f64) + "\"/>");
        else
          line(depth, "<OMF hex=\"" + float_to_hex(l.f64) + "\"/>");
        return;
      case LiteralKind::String:
        line(depth, "<OMSTR>" + xml::escape_text(l.text) + "</OMSTR>");
        return;
      case LiteralKind::ByteArray:
        line(depth, "<OMB>" + base64_encode(l.text) + "</OMB>");
        return;
      default:
        throw Error(ErrorClass::Parse, "Unprintable",
                    "SMT-LIB spec_constant has no OpenMath element; translate it first");
    }
  }
};

}  // namespace

OmDocument parse_om_xml(const std::string& text) {
  xml::Element root = xml::parse_document(text);
  const xml::Element* obj = &root;
  if (obj->name == "FMP") {
    if (obj->children.size() != 1)
      fail("XmlSyntax", "FMP wrapper must contain exactly one object", obj->pos);
    obj = &obj->children[0];
  }
  OmDocument doc;
  if (obj->name == "OMOBJ") {
    if (const std::string* v = obj->attr("version")) doc.version = *v;
    if (const std::string* cb = obj->attr("cdbase")) doc.cdbase = *cb;
    if (obj->children.size() != 1)
      fail("XmlSyntax", "OMOBJ must contain exactly one object", obj->pos);
    doc.root = parse_object(obj->children[0]);
  } else {
    doc.root = parse_object(*obj);
  }
  return doc;
}

std::string print_om_xml(const OmDocument& doc, std::vector<std::string>* warnings) {
  Printer p{std::string(), warnings};
  std::string open = "<OMOBJ xmlns=\"";
  open += kOmNamespace;
  open += "\" version=\"" + xml::escape_attr(doc.version) + "\"";
  if (doc.cdbase) open += " cdbase=\"" + xml::escape_attr(*doc.cdbase) + "\"";
  open += ">";
  p.line(0, open);
  p.object(doc.root, 1);
  p.line(0, "</OMOBJ>");
  return p.out;
}

std::string print_om_xml(const OmDocument& doc) { return print_om_xml(doc, nullptr); }

}  // namespace mathbridge
