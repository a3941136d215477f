#include "mathbridge/sorts.hpp"

#include <cctype>
#include <sstream>

#include "mathbridge/error.hpp"
#include "xml_reader.hpp"

namespace mathbridge {

namespace {

[[noreturn]] void sort_error(const std::string& code, const std::string& msg) {
  throw Error(ErrorClass::Sort, code, msg);
}

}  // namespace

SortSpec SortSpec::variable(std::string name) {
  SortSpec s;
  s.is_var = true;
  s.var = std::move(name);
  return s;
}

SortSpec SortSpec::concrete(Sort sort) {
  SortSpec s;
  s.ctor = sort.name;
  for (auto& a : sort.args) s.args.push_back(SortSpec::concrete(a));
  return s;
}

SortSpec SortSpec::ctor_of(std::string name, std::vector<SortSpec> args) {
  SortSpec s;
  s.ctor = std::move(name);
  s.args = std::move(args);
  return s;
}

// ---- theory profile ---------------------------------------------------------

TheoryProfile TheoryProfile::standard() {
  TheoryProfile p;
  p.literal_sorts[LiteralKind::Integer] = "Int";
  p.literal_sorts[LiteralKind::Float64] = "Real";
  p.literal_sorts[LiteralKind::Numeral] = "Int";
  p.literal_sorts[LiteralKind::Decimal] = "Real";
  return p;
}

namespace {

std::optional<LiteralKind> literal_kind_by_name(const std::string& name) {
  if (name == "integer") return LiteralKind::Integer;
  if (name == "float64") return LiteralKind::Float64;
  if (name == "string") return LiteralKind::String;
  if (name == "bytearray") return LiteralKind::ByteArray;
  if (name == "numeral") return LiteralKind::Numeral;
  if (name == "decimal") return LiteralKind::Decimal;
  if (name == "hexadecimal") return LiteralKind::Hexadecimal;
  if (name == "binary") return LiteralKind::Binary;
  return std::nullopt;
}

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

TheoryProfile TheoryProfile::parse(const std::string& text) {
  TheoryProfile p = TheoryProfile::standard();
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw_parse("BadProfile", "expected key=value", SourcePos{lineno, 1});
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.rfind("literal.", 0) == 0) {
      auto kind = literal_kind_by_name(key.substr(8));
      if (!kind)
        throw_parse("BadProfile", "unknown literal kind '" + key + "'", SourcePos{lineno, 1});
      p.literal_sorts[*kind] = value;
    } else if (key.rfind("var.", 0) == 0) {
      p.var_sorts[key.substr(4)] = Sort::simple(value);
    } else {
      throw_parse("BadProfile", "unknown profile key '" + key + "'", SourcePos{lineno, 1});
    }
  }
  return p;
}

// ---- STS loading --------------------------------------------------------------

namespace {

bool is_oms(const xml::Element& el, const char* cd, const char* name) {
  if (el.name != "OMS") return false;
  const std::string* c = el.attr("cd");
  const std::string* n = el.attr("name");
  return c && n && *c == cd && *n == name;
}

SortSpec parse_sort_spec(const xml::Element& el) {
  if (el.name == "OMV") {
    const std::string* name = el.attr("name");
    if (!name || name->empty())
      throw_parse("BadSignatureXml", "OMV without a name in signature", el.pos);
    return SortSpec::variable(*name);
  }
  if (el.name == "OMS") {
    const std::string* name = el.attr("name");
    if (!name || name->empty())
      throw_parse("BadSignatureXml", "OMS without a name in signature", el.pos);
    return SortSpec::concrete(Sort::simple(*name));
  }
  if (el.name == "OMA") {
    if (el.children.empty())
      throw_parse("BadSignatureXml", "empty OMA in signature", el.pos);
    const xml::Element& head = el.children[0];
    if (is_oms(head, "sts", "mapsto")) {
      // mapsto used as a sort former: a function sort
      std::vector<SortSpec> parts;
      for (size_t k = 1; k < el.children.size(); ++k)
        parts.push_back(parse_sort_spec(el.children[k]));
      if (parts.empty())
        throw_parse("BadSignatureXml", "function sort needs a result", el.pos);
      return SortSpec::ctor_of("->", std::move(parts));
    }
    std::string ctor;
    if (head.name == "OMS") {
      const std::string* name = head.attr("name");
      if (!name) throw_parse("BadSignatureXml", "OMS without a name", head.pos);
      ctor = *name;
    } else if (head.name == "OMV") {
      const std::string* name = head.attr("name");
      if (!name) throw_parse("BadSignatureXml", "OMV without a name", head.pos);
      ctor = *name;
    } else {
      throw_parse("BadSignatureXml", "unexpected sort constructor", head.pos);
    }
    std::vector<SortSpec> args;
    for (size_t k = 1; k < el.children.size(); ++k)
      args.push_back(parse_sort_spec(el.children[k]));
    return SortSpec::ctor_of(std::move(ctor), std::move(args));
  }
  throw_parse("BadSignatureXml", "unexpected <" + el.name + "> in signature", el.pos);
}

StsSignature parse_signature(const xml::Element& sig, const std::string& default_cd) {
  const std::string* name = sig.attr("name");
  if (!name || name->empty())
    throw_parse("BadSignatureXml", "Signature element without a name", sig.pos);
  std::string cd = default_cd;
  if (const std::string* c = sig.attr("cd")) cd = *c;
  if (cd.empty())
    throw_parse("BadSignatureXml",
                "no content dictionary for signature '" + *name + "'", sig.pos);

  const xml::Element* obj = nullptr;
  for (const auto& c : sig.children) {
    if (c.name == "OMOBJ") {
      if (c.children.size() != 1)
        throw_parse("BadSignatureXml", "OMOBJ must hold one object", c.pos);
      obj = &c.children[0];
    } else if (c.name == "OMA") {
      obj = &c;
    }
  }
  if (!obj) throw_parse("BadSignatureXml", "Signature without an OMOBJ body", sig.pos);
  if (obj->name != "OMA" || obj->children.empty() || !is_oms(obj->children[0], "sts", "mapsto"))
    throw_parse("UnknownStsCombinator", "signature body must be an sts.mapsto application",
                obj->pos);

  StsSignature out;
  out.symbol = syms::om(cd, *name);
  size_t n = obj->children.size();
  if (n < 2)
    throw_parse("BadSignatureXml", "mapsto needs at least a result", obj->pos);
  out.result = parse_sort_spec(obj->children[n - 1]);

  // A single nassoc-wrapped argument makes the whole signature n-ary.
  if (n == 3 && obj->children[1].name == "OMA" && !obj->children[1].children.empty() &&
      is_oms(obj->children[1].children[0], "sts", "nassoc")) {
    const xml::Element& na = obj->children[1];
    if (na.children.size() != 2)
      throw_parse("UnknownStsCombinator", "nassoc wraps exactly one sort", na.pos);
    out.shape = StsSignature::Shape::NAssoc;
    out.element = parse_sort_spec(na.children[1]);
    return out;
  }
  out.shape = StsSignature::Shape::Mapsto;
  for (size_t k = 1; k + 1 < n; ++k) {
    const xml::Element& child = obj->children[k];
    if (child.name == "OMA" && !child.children.empty() &&
        is_oms(child.children[0], "sts", "nassoc"))
      throw_parse("UnknownStsCombinator",
                  "nassoc must be the only argument of a signature", child.pos);
    out.args.push_back(parse_sort_spec(child));
  }
  return out;
}

}  // namespace

std::vector<StsSignature> load_sts(const std::string& text, const std::string& default_cd) {
  xml::Element root = xml::parse_document(text);
  std::vector<StsSignature> out;
  if (root.name == "CDSignatures") {
    std::string cd = default_cd;
    if (const std::string* c = root.attr("cd")) cd = *c;
    for (const auto& child : root.children) {
      if (child.name != "Signature")
        throw_parse("BadSignatureXml", "expected <Signature> inside CDSignatures", child.pos);
      out.push_back(parse_signature(child, cd));
    }
    return out;
  }
  if (root.name == "Signature") {
    out.push_back(parse_signature(root, default_cd));
    return out;
  }
  throw_parse("BadSignatureXml", "expected <CDSignatures> or <Signature> root", root.pos);
}

// ---- signature table ------------------------------------------------------------

void SignatureTable::add(StsSignature sig) { sts.insert_or_assign(sig.symbol, std::move(sig)); }

void SignatureTable::declare_sort(const std::string& name, size_t arity) {
  declared_sorts[name] = arity;
}

void SignatureTable::declare_fun(const std::string& name, std::vector<Sort> args, Sort result) {
  declared_funs[name] = {std::move(args), std::move(result)};
}

void SignatureTable::absorb_script_declarations(const Script& s) {
  for (const auto& cmd : s.commands) {
    if (cmd.kind == Command::Kind::DeclareSort) declare_sort(cmd.name, cmd.sort_arity);
    if (cmd.kind == Command::Kind::DeclareFun)
      declare_fun(cmd.name, cmd.arg_sorts, *cmd.result_sort);
    if (cmd.kind == Command::Kind::DefineFun) {
      std::vector<Sort> args;
      for (const auto& p : cmd.params) args.push_back(*p.sort);
      declare_fun(cmd.name, std::move(args), *cmd.result_sort);
    }
  }
}

namespace {

StsSignature nassoc_sig(Symbol sym, SortSpec element, SortSpec result) {
  StsSignature s;
  s.symbol = std::move(sym);
  s.shape = StsSignature::Shape::NAssoc;
  s.element = std::move(element);
  s.result = std::move(result);
  return s;
}

StsSignature mapsto_sig(Symbol sym, std::vector<SortSpec> args, SortSpec result) {
  StsSignature s;
  s.symbol = std::move(sym);
  s.shape = StsSignature::Shape::Mapsto;
  s.args = std::move(args);
  s.result = std::move(result);
  return s;
}

}  // namespace

SignatureTable SignatureTable::standard() {
  SignatureTable t;
  auto V = [] { return SortSpec::variable("T"); };
  auto A = [] { return SortSpec::variable("A"); };
  auto B = [] { return SortSpec::variable("B"); };
  auto Bool = [] { return SortSpec::concrete(Sort::simple("Bool")); };
  auto SetOf = [](SortSpec e) { return SortSpec::ctor_of("Set", {std::move(e)}); };
  auto Fun = [](SortSpec a, SortSpec r) {
    return SortSpec::ctor_of("->", {std::move(a), std::move(r)});
  };

  // SMT-LIB core and arithmetic tokens.
  t.add(mapsto_sig(syms::smt("="), {V(), V()}, Bool()));
  t.add(mapsto_sig(syms::smt("distinct"), {V(), V()}, Bool()));
  t.add(nassoc_sig(syms::smt("and"), Bool(), Bool()));
  t.add(nassoc_sig(syms::smt("or"), Bool(), Bool()));
  t.add(mapsto_sig(syms::smt("not"), {Bool()}, Bool()));
  t.add(mapsto_sig(syms::smt("=>"), {Bool(), Bool()}, Bool()));
  t.add(mapsto_sig(syms::smt("ite"), {Bool(), V(), V()}, V()));
  t.add(mapsto_sig(syms::smt("true"), {}, Bool()));
  t.add(mapsto_sig(syms::smt("false"), {}, Bool()));
  t.add(nassoc_sig(syms::smt("+"), V(), V()));
  t.add(nassoc_sig(syms::smt("*"), V(), V()));
  t.add(nassoc_sig(syms::smt("-"), V(), V()));  // unary minus special-cased
  t.add(mapsto_sig(syms::smt("/"), {V(), V()}, V()));
  for (const char* rel : {"<", "<=", ">", ">="})
    t.add(mapsto_sig(syms::smt(rel), {V(), V()}, Bool()));

  // OpenMath registry symbols.
  t.add(nassoc_sig(syms::arith1_plus(), V(), V()));
  t.add(nassoc_sig(syms::arith1_times(), V(), V()));
  t.add(nassoc_sig(syms::arith2_times(), SortSpec::variable("AbelianSemiGroup"),
                   SortSpec::variable("AbelianSemiGroup")));
  t.add(mapsto_sig(syms::arith1_minus(), {V(), V()}, V()));
  t.add(mapsto_sig(syms::arith1_divide(), {V(), V()}, V()));
  t.add(mapsto_sig(syms::arith1_unary_minus(), {V()}, V()));
  for (const auto* rel : {&syms::relation1_eq(), &syms::relation1_neq()})
    t.add(mapsto_sig(*rel, {V(), V()}, Bool()));
  for (const auto* rel : {&syms::relation1_lt(), &syms::relation1_leq()})
    t.add(mapsto_sig(*rel, {V(), V()}, Bool()));
  t.add(nassoc_sig(syms::logic1_and(), Bool(), Bool()));
  t.add(nassoc_sig(syms::logic1_or(), Bool(), Bool()));
  t.add(mapsto_sig(syms::logic1_not(), {Bool()}, Bool()));
  t.add(mapsto_sig(syms::logic1_implies(), {Bool(), Bool()}, Bool()));
  t.add(mapsto_sig(syms::logic1_true(), {}, Bool()));
  t.add(mapsto_sig(syms::logic1_false(), {}, Bool()));
  t.add(mapsto_sig(syms::set1_in(), {V(), SetOf(V())}, Bool()));
  t.add(mapsto_sig(syms::set1_map(), {Fun(A(), B()), SetOf(A())}, SetOf(B())));
  t.add(mapsto_sig(syms::set1_suchthat(), {SetOf(V()), Fun(V(), Bool())}, SetOf(V())));
  t.add(mapsto_sig(syms::minmax1_max(), {SetOf(V())}, V()));
  t.add(mapsto_sig(syms::minmax1_min(), {SetOf(V())}, V()));
  t.add(mapsto_sig(syms::interval1_interval_cc(), {V(), V()}, SetOf(V())));
  return t;
}

// ---- checking --------------------------------------------------------------------

namespace {

// Inference state: placeholders for unsorted bound variables, union-find with
// an optional concrete binding at the root.
struct Inference {
  std::vector<size_t> parent;
  std::vector<std::optional<Sort>> binding;

  size_t fresh() {
    parent.push_back(parent.size());
    binding.emplace_back();
    return parent.size() - 1;
  }

  size_t find(size_t u) {
    while (parent[u] != u) u = parent[u] = parent[parent[u]];
    return u;
  }

  void merge(size_t a, size_t b, const std::string& where) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (binding[a] && binding[b] && *binding[a] != *binding[b])
      sort_error("SortMismatch", where + ": " + binding[a]->str() + " vs " + binding[b]->str());
    if (!binding[a]) std::swap(a, b);
    parent[b] = a;
    if (binding[b] && !binding[a]) binding[a] = binding[b];
  }

  void bind(size_t u, const Sort& s, const std::string& where) {
    u = find(u);
    if (binding[u]) {
      if (*binding[u] != s)
        sort_error("SortMismatch", where + ": expected " + binding[u]->str() + ", found " +
                                       s.str());
      return;
    }
    binding[u] = s;
  }
};

// The sort of a subterm: concrete, or a placeholder id.
struct SortRes {
  std::optional<Sort> concrete;
  size_t unknown = 0;

  static SortRes of(Sort s) { return SortRes{std::move(s), 0}; }
  static SortRes placeholder(size_t id) { return SortRes{std::nullopt, id}; }
  bool is_unknown() const { return !concrete.has_value(); }
};

struct Checker {
  const SignatureTable& table;
  Inference inf;

  std::string describe(const SortRes& r) {
    if (r.concrete) return r.concrete->str();
    size_t u = inf.find(r.unknown);
    if (inf.binding[u]) return inf.binding[u]->str();
    return "?" + std::to_string(u);
  }

  Sort resolve(const SortRes& r) {
    if (r.concrete) return *r.concrete;
    size_t u = inf.find(r.unknown);
    if (inf.binding[u]) return *inf.binding[u];
    return Sort{"?" + std::to_string(u), {}, false};
  }

  void unify_res(const SortRes& a, const SortRes& b, const std::string& where) {
    if (a.is_unknown() && b.is_unknown()) {
      inf.merge(a.unknown, b.unknown, where);
    } else if (a.is_unknown()) {
      inf.bind(a.unknown, *b.concrete, where);
    } else if (b.is_unknown()) {
      inf.bind(b.unknown, *a.concrete, where);
    } else if (*a.concrete != *b.concrete) {
      sort_error("SortMismatch",
                 where + ": expected " + a.concrete->str() + ", found " + b.concrete->str());
    }
  }

  void expect_concrete(const SortRes& r, const Sort& s, const std::string& where) {
    unify_res(SortRes::of(s), r, where);
  }

  // Matches a signature spec against an argument sort, binding signature-local
  // sort variables as it goes. Placeholders bind to whatever the spec demands
  // when it is concrete enough.
  void match_spec(const SortSpec& spec, const SortRes& actual,
                  std::map<std::string, SortRes>& vars, const std::string& where) {
    if (spec.is_var) {
      auto it = vars.find(spec.var);
      if (it == vars.end()) {
        vars.emplace(spec.var, actual);
        return;
      }
      unify_res(it->second, actual, where);
      return;
    }
    // Structured spec: resolve sub-specs to a concrete sort if possible.
    if (auto s = spec_to_sort(spec, vars)) {
      expect_concrete(actual, *s, where);
      return;
    }
    // The spec has unresolved variables inside a structure; require the actual
    // sort to be concrete and destructure it.
    if (actual.is_unknown()) {
      size_t u = inf.find(actual.unknown);
      if (!inf.binding[u])
        sort_error("SortMismatch", where + ": cannot infer a parametric sort");
      match_concrete(spec, *inf.binding[u], vars, where);
      return;
    }
    match_concrete(spec, *actual.concrete, vars, where);
  }

  void match_concrete(const SortSpec& spec, const Sort& s,
                      std::map<std::string, SortRes>& vars, const std::string& where) {
    if (spec.is_var) {
      auto it = vars.find(spec.var);
      if (it == vars.end()) {
        vars.emplace(spec.var, SortRes::of(s));
        return;
      }
      unify_res(it->second, SortRes::of(s), where);
      return;
    }
    if (spec.ctor != s.name || spec.args.size() != s.args.size())
      sort_error("SortMismatch", where + ": expected " + spec_str(spec) + ", found " + s.str());
    for (size_t k = 0; k < spec.args.size(); ++k)
      match_concrete(spec.args[k], s.args[k], vars, where);
  }

  std::optional<Sort> spec_to_sort(const SortSpec& spec,
                                   const std::map<std::string, SortRes>& vars) {
    if (spec.is_var) {
      auto it = vars.find(spec.var);
      if (it == vars.end()) return std::nullopt;
      if (it->second.concrete) return it->second.concrete;
      size_t u = inf.find(it->second.unknown);
      if (inf.binding[u]) return inf.binding[u];
      return std::nullopt;
    }
    Sort s = Sort::simple(spec.ctor);
    s.args.clear();
    for (const auto& a : spec.args) {
      auto sub = spec_to_sort(a, vars);
      if (!sub) return std::nullopt;
      s.args.push_back(*sub);
    }
    return s;
  }

  static std::string spec_str(const SortSpec& spec) {
    if (spec.is_var) return spec.var;
    if (spec.args.empty()) return spec.ctor;
    std::string out = "(" + spec.ctor;
    for (const auto& a : spec.args) out += " " + spec_str(a);
    return out + ")";
  }

  SortRes result_of(const StsSignature& sig, std::map<std::string, SortRes>& vars,
                    const std::string& where) {
    if (sig.result.is_var) {
      auto it = vars.find(sig.result.var);
      if (it != vars.end()) return it->second;
      sort_error("UnknownSymbolSort",
                 where + ": result sort variable '" + sig.result.var + "' is unconstrained");
    }
    auto s = spec_to_sort(sig.result, vars);
    if (!s)
      sort_error("UnknownSymbolSort", where + ": cannot resolve result sort");
    return SortRes::of(*s);
  }

  SortRes apply_signature(const StsSignature& sig, const std::vector<SortRes>& args,
                          const std::string& name) {
    std::map<std::string, SortRes> vars;
    if (sig.shape == StsSignature::Shape::NAssoc) {
      if (args.size() < 2)
        sort_error("ArityMismatch", "'" + name + "' is n-ary associative and needs at least 2 "
                                    "arguments, got " + std::to_string(args.size()));
      for (size_t k = 0; k < args.size(); ++k)
        match_spec(sig.element, args[k], vars, "'" + name + "' argument " + std::to_string(k + 1));
      return result_of(sig, vars, "'" + name + "'");
    }
    if (args.size() != sig.args.size())
      sort_error("ArityMismatch", "'" + name + "' expects " + std::to_string(sig.args.size()) +
                                      " argument(s), got " + std::to_string(args.size()));
    for (size_t k = 0; k < args.size(); ++k)
      match_spec(sig.args[k], args[k], vars, "'" + name + "' argument " + std::to_string(k + 1));
    return result_of(sig, vars, "'" + name + "'");
  }

  SortRes check(const Term& t, std::map<std::string, SortRes>& env) {
    if (const auto* l = as_lit(t)) {
      auto it = table.profile.literal_sorts.find(l->value.kind);
      if (it == table.profile.literal_sorts.end())
        sort_error("UnknownSymbolSort", "no profile sort for this literal kind");
      return SortRes::of(Sort::simple(it->second));
    }
    if (const auto* v = as_var(t)) {
      if (auto it = env.find(v->name); it != env.end()) return it->second;
      if (auto it = table.var_sorts.find(v->name); it != table.var_sorts.end())
        return SortRes::of(it->second);
      if (auto it = table.profile.var_sorts.find(v->name); it != table.profile.var_sorts.end())
        return SortRes::of(it->second);
      sort_error("UnsortedFreeVariable", "free variable '" + v->name + "' has no sort");
    }
    if (const auto* s = as_sym(t)) return check_symbol_application(s->symbol, {}, t);
    if (const auto* at = as_attr(t)) return check(at->base, env);
    if (const auto* a = as_apply(t)) {
      std::vector<SortRes> args;
      args.reserve(a->args.size());
      for (const auto& x : a->args) args.push_back(check(x, env));
      if (const auto* hs = as_sym(a->head)) return check_symbol_application(hs->symbol, args, t);
      // function-valued head (a variable or a lambda)
      SortRes head = check(a->head, env);
      if (head.is_unknown())
        sort_error("UnknownSymbolSort", "cannot type an application of an unsorted head");
      const Sort& hs = *head.concrete;
      if (hs.name != "->" || hs.args.size() != args.size() + 1)
        sort_error("SortMismatch", "head of application is not a function of " +
                                       std::to_string(args.size()) + " argument(s): " + hs.str());
      for (size_t k = 0; k < args.size(); ++k)
        expect_concrete(args[k], hs.args[k], "argument " + std::to_string(k + 1));
      return SortRes::of(hs.args.back());
    }
    if (const auto* b = as_bind(t)) return check_bind(*b, env);
    sort_error("UnknownSymbolSort", "term cannot be sorted (error or foreign object)");
  }

  SortRes check_symbol_application(const Symbol& sym, const std::vector<SortRes>& args,
                                   const Term& at) {
    (void)at;
    // unary minus on the SMT side shares the subtraction token
    if (sym == syms::smt("-") && args.size() == 1) return args[0];
    if (sym.origin == SymbolOrigin::SMTTheory) {
      if (auto it = table.declared_funs.find(sym.name); it != table.declared_funs.end()) {
        const auto& [params, result] = it->second;
        if (args.size() != params.size())
          sort_error("ArityMismatch", "'" + sym.name + "' expects " +
                                          std::to_string(params.size()) + " argument(s), got " +
                                          std::to_string(args.size()));
        for (size_t k = 0; k < args.size(); ++k)
          expect_concrete(args[k], params[k], "'" + sym.name + "' argument " +
                                                  std::to_string(k + 1));
        return SortRes::of(result);
      }
    }
    if (auto it = table.sts.find(sym); it != table.sts.end())
      return apply_signature(it->second, args, sym.origin == SymbolOrigin::SMTTheory
                                                    ? sym.name
                                                    : sym.qualified());
    sort_error("UnknownSymbolSort", "no signature for symbol '" + sym.qualified() + "'");
  }

  SortRes check_bind(const BindNode& b, std::map<std::string, SortRes>& env) {
    std::map<std::string, SortRes> inner = env;
    std::vector<SortRes> var_sorts;
    for (const auto& bv : b.vars) {
      SortRes r = bv.sort ? SortRes::of(*bv.sort) : SortRes::placeholder(inf.fresh());
      inner.insert_or_assign(bv.name, r);
      var_sorts.push_back(r);
    }
    const Symbol& binder = b.binder;
    bool quantifier = binder == syms::quant1_forall() || binder == syms::quant1_exists() ||
                      binder == syms::smt_forall() || binder == syms::smt_exists() ||
                      binder == syms::quant2_exists_unique();
    if (quantifier) {
      if (b.condition)
        expect_concrete(check(*b.condition, inner), Sort::simple("Bool"), "binder condition");
      expect_concrete(check(b.body, inner), Sort::simple("Bool"),
                      "body of " + binder.qualified());
      return SortRes::of(Sort::simple("Bool"));
    }
    if (binder == syms::fns1_lambda()) {
      if (b.condition)
        sort_error("UnknownSymbolSort", "lambda with a condition cannot be sorted");
      SortRes body = check(b.body, inner);
      Sort fn = Sort{"->", {}, false};
      for (const auto& vs : var_sorts) fn.args.push_back(resolve(vs));
      fn.args.push_back(resolve(body));
      return SortRes::of(fn);
    }
    if (binder == syms::minmax2_max() || binder == syms::minmax2_argmax() ||
        binder == syms::minmax2_argmaxone()) {
      if (!b.condition)
        sort_error("UnknownSymbolSort",
                   binder.qualified() + " needs a restricting condition");
      expect_concrete(check(*b.condition, inner), Sort::simple("Bool"), "binder condition");
      SortRes body = check(b.body, inner);
      if (binder == syms::minmax2_max()) return body;
      if (b.vars.size() != 1)
        sort_error("UnknownSymbolSort", binder.qualified() + " binds exactly one variable");
      if (binder == syms::minmax2_argmax())
        return SortRes::of(Sort{"Set", {resolve(var_sorts[0])}, false});
      return var_sorts[0];  // argmaxone: a witness point
    }
    sort_error("UnknownSymbolSort", "no sorting rule for binder " + binder.qualified());
  }
};

}  // namespace

Sort check_sorts(const Term& t, const SignatureTable& table) {
  Checker c{table};
  std::map<std::string, SortRes> env;
  SortRes r = c.check(t, env);
  return c.resolve(r);
}

}  // namespace mathbridge
