#include <algorithm>
#include <map>

#include "mathbridge/error.hpp"
#include "mathbridge/term.hpp"

namespace mathbridge {

namespace {

void collect_free(const Term& t, std::set<std::string>& bound, std::set<std::string>& out) {
  if (const auto* v = as_var(t)) {
    if (!bound.count(v->name)) out.insert(v->name);
  } else if (const auto* a = as_apply(t)) {
    collect_free(a->head, bound, out);
    for (const auto& x : a->args) collect_free(x, bound, out);
  } else if (const auto* b = as_bind(t)) {
    std::vector<std::string> added;
    for (const auto& bv : b->vars)
      if (bound.insert(bv.name).second) added.push_back(bv.name);
    if (b->condition) collect_free(*b->condition, bound, out);
    collect_free(b->body, bound, out);
    for (const auto& n : added) bound.erase(n);
  } else if (const auto* at = as_attr(t)) {
    for (const auto& [k, v] : at->pairs) collect_free(v, bound, out);
    collect_free(at->base, bound, out);
  } else if (const auto* e = as_error(t)) {
    for (const auto& x : e->args) collect_free(x, bound, out);
  }
}

}  // namespace

std::set<std::string> free_variables(const Term& t) {
  std::set<std::string> bound, out;
  collect_free(t, bound, out);
  return out;
}

std::set<std::string> all_names(const Term& t) {
  std::set<std::string> out;
  walk(t, [&](const Term& s) {
    if (const auto* v = as_var(s)) out.insert(v->name);
    if (const auto* b = as_bind(s))
      for (const auto& bv : b->vars) out.insert(bv.name);
  });
  return out;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  for (unsigned k = 1;; ++k) {
    std::string candidate = base + "!" + std::to_string(k);
    if (!avoid.count(candidate)) return candidate;
  }
}

namespace {

using Env = std::map<std::string, Term>;

Term subst(const Term& t, const Env& env, std::set<std::string>& avoid);

// Renames bound vars that would capture a free variable of some replacement.
Term subst_bind(const BindNode& b, const Env& env, std::set<std::string>& avoid) {
  Env inner = env;
  for (const auto& bv : b.vars) inner.erase(bv.name);

  // Free variables introduced by the still-active replacements.
  std::set<std::string> incoming;
  for (const auto& [name, repl] : inner) {
    (void)name;
    auto fv = free_variables(repl);
    incoming.insert(fv.begin(), fv.end());
  }

  std::vector<BoundVar> vars = b.vars;
  Env renames;
  for (auto& bv : vars) {
    if (incoming.count(bv.name)) {
      std::string nn = fresh_name(bv.name, avoid);
      avoid.insert(nn);
      renames.insert_or_assign(bv.name, Term::var(nn));
      bv.name = nn;
    }
  }
  if (!renames.empty()) {
    for (const auto& [from, to] : renames) inner.insert_or_assign(from, to);
  }
  if (inner.empty()) {
    return b.condition ? Term::bind_conditional(b.binder, vars, b.body, *b.condition)
                       : Term::bind(b.binder, vars, b.body);
  }
  Term body = subst(b.body, inner, avoid);
  if (b.condition) {
    Term cond = subst(*b.condition, inner, avoid);
    return Term::bind_conditional(b.binder, std::move(vars), std::move(body), std::move(cond));
  }
  return Term::bind(b.binder, std::move(vars), std::move(body));
}

Term subst(const Term& t, const Env& env, std::set<std::string>& avoid) {
  if (env.empty()) return t;
  if (const auto* v = as_var(t)) {
    auto it = env.find(v->name);
    return it == env.end() ? t : it->second;
  }
  if (const auto* a = as_apply(t)) {
    std::vector<Term> args;
    args.reserve(a->args.size());
    for (const auto& x : a->args) args.push_back(subst(x, env, avoid));
    return Term::apply(subst(a->head, env, avoid), std::move(args));
  }
  if (const auto* b = as_bind(t)) return subst_bind(*b, env, avoid);
  if (const auto* at = as_attr(t)) {
    std::vector<std::pair<Symbol, Term>> pairs;
    pairs.reserve(at->pairs.size());
    for (const auto& [k, v] : at->pairs) pairs.emplace_back(k, subst(v, env, avoid));
    return Term::attributed(std::move(pairs), subst(at->base, env, avoid));
  }
  if (const auto* e = as_error(t)) {
    std::vector<Term> args;
    args.reserve(e->args.size());
    for (const auto& x : e->args) args.push_back(subst(x, env, avoid));
    return Term::error_term(e->symbol, std::move(args));
  }
  return t;  // Sym, Lit, Foreign
}

}  // namespace

Term substitute_simultaneous(const Term& t,
                             const std::vector<std::pair<std::string, Term>>& bindings) {
  Env env;
  for (const auto& [name, repl] : bindings) {
    if (!env.emplace(name, repl).second)
      throw Error(ErrorClass::Usage, "DuplicateBindingName",
                  "duplicate name in simultaneous substitution: " + name);
  }
  if (env.empty()) return t;
  // Fresh names must avoid everything visible in the original term and in the
  // replacements, keeping the output deterministic.
  std::set<std::string> avoid = all_names(t);
  for (const auto& [name, repl] : bindings) {
    (void)name;
    auto names = all_names(repl);
    avoid.insert(names.begin(), names.end());
  }
  return subst(t, env, avoid);
}

namespace {

// De Bruijn-style comparison: map each bound name to the index of its binder.
struct AlphaEnv {
  std::map<std::string, size_t> levels;
  size_t next = 0;
};

bool alpha_eq(const Term& a, const Term& b, AlphaEnv ea, AlphaEnv eb);

bool alpha_vars(const VarNode& va, const VarNode& vb, const AlphaEnv& ea, const AlphaEnv& eb) {
  auto ia = ea.levels.find(va.name);
  auto ib = eb.levels.find(vb.name);
  if ((ia == ea.levels.end()) != (ib == eb.levels.end())) return false;
  if (ia == ea.levels.end()) return va.name == vb.name;  // both free
  return ia->second == ib->second;
}

bool alpha_eq(const Term& a, const Term& b, AlphaEnv ea, AlphaEnv eb) {
  const auto& na = a.node().v;
  const auto& nb = b.node().v;
  if (na.index() != nb.index()) return false;
  if (const auto* va = as_var(a)) return alpha_vars(*va, *as_var(b), ea, eb);
  if (const auto* sa = as_sym(a)) return sa->symbol == as_sym(b)->symbol;
  if (const auto* la = as_lit(a)) return la->value == as_lit(b)->value;
  if (const auto* aa = as_apply(a)) {
    const auto* ab = as_apply(b);
    if (aa->args.size() != ab->args.size()) return false;
    if (!alpha_eq(aa->head, ab->head, ea, eb)) return false;
    for (size_t i = 0; i < aa->args.size(); ++i)
      if (!alpha_eq(aa->args[i], ab->args[i], ea, eb)) return false;
    return true;
  }
  if (const auto* ba = as_bind(a)) {
    const auto* bb = as_bind(b);
    if (ba->binder != bb->binder || ba->vars.size() != bb->vars.size()) return false;
    if (ba->condition.has_value() != bb->condition.has_value()) return false;
    for (size_t i = 0; i < ba->vars.size(); ++i) {
      if (ba->vars[i].sort != bb->vars[i].sort) return false;
      size_t lvl = ea.next++;
      eb.next = ea.next;
      ea.levels.insert_or_assign(ba->vars[i].name, lvl);
      eb.levels.insert_or_assign(bb->vars[i].name, lvl);
    }
    if (ba->condition && !alpha_eq(*ba->condition, *bb->condition, ea, eb)) return false;
    return alpha_eq(ba->body, bb->body, ea, eb);
  }
  if (const auto* ta = as_attr(a)) {
    const auto* tb = as_attr(b);
    if (ta->pairs.size() != tb->pairs.size()) return false;
    for (size_t i = 0; i < ta->pairs.size(); ++i) {
      if (ta->pairs[i].first != tb->pairs[i].first) return false;
      if (!alpha_eq(ta->pairs[i].second, tb->pairs[i].second, ea, eb)) return false;
    }
    return alpha_eq(ta->base, tb->base, ea, eb);
  }
  if (const auto* era = as_error(a)) {
    const auto* erb = as_error(b);
    if (era->symbol != erb->symbol || era->args.size() != erb->args.size()) return false;
    for (size_t i = 0; i < era->args.size(); ++i)
      if (!alpha_eq(era->args[i], erb->args[i], ea, eb)) return false;
    return true;
  }
  if (const auto* fa = as_foreign(a)) {
    const auto* fb = as_foreign(b);
    return fa->encoding == fb->encoding && fa->blob == fb->blob;
  }
  return false;
}

}  // namespace

bool alpha_equal(const Term& a, const Term& b) { return alpha_eq(a, b, {}, {}); }

Term strip_attributions(const Term& t) {
  if (const auto* at = as_attr(t)) return strip_attributions(at->base);
  if (const auto* a = as_apply(t)) {
    std::vector<Term> args;
    args.reserve(a->args.size());
    for (const auto& x : a->args) args.push_back(strip_attributions(x));
    return Term::apply(strip_attributions(a->head), std::move(args));
  }
  if (const auto* b = as_bind(t)) {
    std::vector<BoundVar> vars;
    vars.reserve(b->vars.size());
    for (const auto& bv : b->vars) vars.push_back(BoundVar{bv.name, std::nullopt});
    Term body = strip_attributions(b->body);
    if (b->condition)
      return Term::bind_conditional(b->binder, std::move(vars), std::move(body),
                                    strip_attributions(*b->condition));
    return Term::bind(b->binder, std::move(vars), std::move(body));
  }
  if (const auto* e = as_error(t)) {
    std::vector<Term> args;
    args.reserve(e->args.size());
    for (const auto& x : e->args) args.push_back(strip_attributions(x));
    return Term::error_term(e->symbol, std::move(args));
  }
  return t;
}

bool contains_extension_symbol(const Term& t) {
  if (const auto* s = as_sym(t)) return s->symbol.origin == SymbolOrigin::Extension;
  if (const auto* a = as_apply(t)) {
    if (contains_extension_symbol(a->head)) return true;
    return std::any_of(a->args.begin(), a->args.end(),
                       [](const Term& x) { return contains_extension_symbol(x); });
  }
  if (const auto* b = as_bind(t)) {
    if (b->binder.origin == SymbolOrigin::Extension) return true;
    if (b->condition && contains_extension_symbol(*b->condition)) return true;
    return contains_extension_symbol(b->body);
  }
  if (const auto* at = as_attr(t)) {
    for (const auto& [k, v] : at->pairs) {
      if (k.origin == SymbolOrigin::Extension && k != syms::sts_sort()) return true;
      if (contains_extension_symbol(v)) return true;
    }
    return contains_extension_symbol(at->base);
  }
  if (const auto* e = as_error(t)) {
    if (e->symbol.origin == SymbolOrigin::Extension) return true;
    return std::any_of(e->args.begin(), e->args.end(),
                       [](const Term& x) { return contains_extension_symbol(x); });
  }
  return false;
}

}  // namespace mathbridge
