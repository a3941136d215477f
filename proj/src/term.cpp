#include "mathbridge/term.hpp"

#include <bit>
#include <cctype>

#include "mathbridge/error.hpp"

namespace mathbridge {

// ---- Literal ----------------------------------------------------------------

Literal Literal::integer(const std::string& decimal_text) {
  // Canonicalize: optional sign, digits, no leading zeros, no "-0".
  size_t i = 0;
  bool neg = false;
  if (i < decimal_text.size() && (decimal_text[i] == '-' || decimal_text[i] == '+')) {
    neg = decimal_text[i] == '-';
    ++i;
  }
  size_t digits_begin = i;
  while (i < decimal_text.size() && std::isdigit(static_cast<unsigned char>(decimal_text[i])))
    ++i;
  if (digits_begin == i || i != decimal_text.size())
    throw_parse("BadInteger", "not a decimal integer: '" + decimal_text + "'");
  size_t first = digits_begin;
  while (first + 1 < i && decimal_text[first] == '0') ++first;
  std::string canon = decimal_text.substr(first, i - first);
  if (neg && canon != "0") canon.insert(canon.begin(), '-');
  return Literal{LiteralKind::Integer, std::move(canon)};
}

Literal Literal::float64(double v) { return Literal{LiteralKind::Float64, "", v}; }
Literal Literal::string(std::string s) { return Literal{LiteralKind::String, std::move(s)}; }
Literal Literal::bytes(std::string raw) { return Literal{LiteralKind::ByteArray, std::move(raw)}; }
Literal Literal::numeral(std::string s) { return Literal{LiteralKind::Numeral, std::move(s)}; }
Literal Literal::decimal(std::string s) { return Literal{LiteralKind::Decimal, std::move(s)}; }
Literal Literal::hexadecimal(std::string s) {
  return Literal{LiteralKind::Hexadecimal, std::move(s)};
}
Literal Literal::binary(std::string s) { return Literal{LiteralKind::Binary, std::move(s)}; }

bool Literal::operator==(const Literal& o) const {
  if (kind != o.kind) return false;
  if (kind == LiteralKind::Float64)
    return std::bit_cast<uint64_t>(f64) == std::bit_cast<uint64_t>(o.f64);
  return text == o.text;
}

// ---- Sort -------------------------------------------------------------------

Sort Sort::simple(std::string name) {
  bool interp = name == "Int" || name == "Real" || name == "Bool";
  return Sort{std::move(name), {}, interp};
}

std::string Sort::str() const {
  if (args.empty()) return name;
  std::string out = "(" + name;
  for (const auto& a : args) out += " " + a.str();
  out += ")";
  return out;
}

// ---- Term factories -----------------------------------------------------------

Term Term::sym(Symbol s) {
  return Term(std::make_shared<const TermNode>(TermNode{SymNode{std::move(s)}}));
}
Term Term::var(std::string name) {
  if (name.empty()) throw Error(ErrorClass::Usage, "EmptyName", "variable name is empty");
  return Term(std::make_shared<const TermNode>(TermNode{VarNode{std::move(name)}}));
}
Term Term::lit(Literal l) {
  return Term(std::make_shared<const TermNode>(TermNode{LitNode{std::move(l)}}));
}
Term Term::apply(Term head, std::vector<Term> args) {
  return Term(
      std::make_shared<const TermNode>(TermNode{ApplyNode{std::move(head), std::move(args)}}));
}
Term Term::bind(Symbol binder, std::vector<BoundVar> vars, Term body) {
  if (vars.empty())
    throw Error(ErrorClass::Usage, "MissingBvar", "binder requires at least one bound variable");
  return Term(std::make_shared<const TermNode>(
      TermNode{BindNode{std::move(binder), std::move(vars), std::nullopt, std::move(body)}}));
}
Term Term::bind_conditional(Symbol binder, std::vector<BoundVar> vars, Term body,
                            Term condition) {
  if (vars.empty())
    throw Error(ErrorClass::Usage, "MissingBvar", "binder requires at least one bound variable");
  return Term(std::make_shared<const TermNode>(TermNode{
      BindNode{std::move(binder), std::move(vars), std::move(condition), std::move(body)}}));
}
Term Term::attributed(std::vector<std::pair<Symbol, Term>> pairs, Term base) {
  return Term(
      std::make_shared<const TermNode>(TermNode{AttrNode{std::move(pairs), std::move(base)}}));
}
Term Term::error_term(Symbol s, std::vector<Term> args) {
  return Term(
      std::make_shared<const TermNode>(TermNode{ErrorNode{std::move(s), std::move(args)}}));
}
Term Term::foreign(std::string encoding, std::string blob) {
  return Term(std::make_shared<const TermNode>(
      TermNode{ForeignNode{std::move(encoding), std::move(blob)}}));
}

bool Term::operator==(const Term& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  return node_->v == o.node_->v;
}

const SymNode* as_sym(const Term& t) { return std::get_if<SymNode>(&t.node().v); }
const VarNode* as_var(const Term& t) { return std::get_if<VarNode>(&t.node().v); }
const LitNode* as_lit(const Term& t) { return std::get_if<LitNode>(&t.node().v); }
const ApplyNode* as_apply(const Term& t) { return std::get_if<ApplyNode>(&t.node().v); }
const BindNode* as_bind(const Term& t) { return std::get_if<BindNode>(&t.node().v); }
const AttrNode* as_attr(const Term& t) { return std::get_if<AttrNode>(&t.node().v); }
const ErrorNode* as_error(const Term& t) { return std::get_if<ErrorNode>(&t.node().v); }
const ForeignNode* as_foreign(const Term& t) { return std::get_if<ForeignNode>(&t.node().v); }

void walk(const Term& t, const std::function<void(const Term&)>& fn) {
  fn(t);
  if (const auto* a = as_apply(t)) {
    walk(a->head, fn);
    for (const auto& x : a->args) walk(x, fn);
  } else if (const auto* b = as_bind(t)) {
    if (b->condition) walk(*b->condition, fn);
    walk(b->body, fn);
  } else if (const auto* at = as_attr(t)) {
    for (const auto& [k, v] : at->pairs) walk(v, fn);
    walk(at->base, fn);
  } else if (const auto* e = as_error(t)) {
    for (const auto& x : e->args) walk(x, fn);
  }
}

}  // namespace mathbridge
