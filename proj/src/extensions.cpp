#include "mathbridge/extensions.hpp"

#include "mathbridge/error.hpp"

namespace mathbridge {

namespace {

[[noreturn]] void ext_error(const std::string& code, const std::string& msg) {
  throw Error(ErrorClass::Extension, code, msg);
}

// Prefer the plain base name; suffix only on a clash.
std::string pick_fresh(const std::string& base, std::set<std::string>& avoid) {
  std::string name = avoid.count(base) ? fresh_name(base, avoid) : base;
  avoid.insert(name);
  return name;
}

Term subst_var(const Term& t, const std::string& from, const std::string& to) {
  return substitute_simultaneous(t, {{from, Term::var(to)}});
}

// Extracts S from a condition of the form (set1.in x S) with S free of x.
Term membership_set(const BindNode& b, const char* code) {
  if (!b.condition)
    throw Error(ErrorClass::Extension, "ConditionMissing",
                b.binder.qualified() + " needs a restricting condition");
  const auto* a = as_apply(*b.condition);
  const auto* h = a ? as_sym(a->head) : nullptr;
  if (!h || !(h->symbol == syms::set1_in()) || a->args.size() != 2)
    throw Error(ErrorClass::Extension, code,
                "condition must be a membership predicate (set1.in)");
  const auto* v = as_var(a->args[0]);
  if (!v || v->name != b.vars[0].name)
    throw Error(ErrorClass::Extension, code,
                "membership condition must test the bound variable");
  if (free_variables(a->args[1]).count(b.vars[0].name))
    throw Error(ErrorClass::Extension, code,
                "the restricting set may not mention the bound variable");
  return a->args[1];
}

}  // namespace

Term desugar_exists_unique(const Term& t, const DesugarStrategy& strat) {
  const auto* b = as_bind(t);
  if (!b || !(b->binder == syms::quant2_exists_unique()))
    ext_error("NotExistsUnique", "expected a quant2.exists_unique binder");
  if (b->condition)
    ext_error("NotExistsUnique", "exists_unique takes no restricting condition");
  if (b->vars.size() != 1)
    ext_error("MultiVarNotSupported",
              "exists_unique over several variables is ambiguous and not supported");
  const BoundVar& x = b->vars[0];
  const Term& P = b->body;

  std::set<std::string> avoid = all_names(P);
  avoid.insert(x.name);

  Term eq_head = Term::sym(syms::relation1_eq());
  Term and_head = Term::sym(syms::logic1_and());
  Term implies_head = Term::sym(syms::logic1_implies());

  if (strat.exists_unique == DesugarStrategy::ExistsUnique::Alternation) {
    // exists x (P(x) and forall y (P(y) implies x = y))
    std::string y = pick_fresh("y", avoid);
    Term inner = Term::bind(
        syms::quant1_forall(), {BoundVar{y, x.sort}},
        Term::apply(implies_head,
                    {subst_var(P, x.name, y),
                     Term::apply(eq_head, {Term::var(x.name), Term::var(y)})}));
    return Term::bind(syms::quant1_exists(), {x},
                      Term::apply(and_head, {P, inner}));
  }
  // (exists x P(x)) and (forall y z ((P(y) and P(z)) implies y = z))
  std::string y = pick_fresh("y", avoid);
  std::string z = pick_fresh("z", avoid);
  Term existential = Term::bind(syms::quant1_exists(), {x}, P);
  Term uniqueness = Term::bind(
      syms::quant1_forall(), {BoundVar{y, x.sort}, BoundVar{z, x.sort}},
      Term::apply(implies_head,
                  {Term::apply(and_head, {subst_var(P, x.name, y), subst_var(P, x.name, z)}),
                   Term::apply(eq_head, {Term::var(y), Term::var(z)})}));
  return Term::apply(and_head, {existential, uniqueness});
}

Term lower_max(const Term& t) {
  if (const auto* a = as_apply(t)) {
    const auto* h = as_sym(a->head);
    if (h && h->symbol == syms::minmax2_max_sf()) {
      if (a->args.size() != 2)
        ext_error("NotAMaxForm", "minmax2.max_sf takes a set and a function");
      const Term& set = a->args[0];
      const Term& fn = a->args[1];
      return Term::apply(Term::sym(syms::minmax1_max()),
                         {Term::apply(Term::sym(syms::set1_map()), {fn, set})});
    }
  }
  if (const auto* b = as_bind(t)) {
    if (b->binder == syms::minmax2_max()) {
      if (b->vars.size() != 1)
        ext_error("NotAMaxForm", "the max binder takes exactly one bound variable");
      Term set = membership_set(*b, "NotAMaxForm");
      Term lambda = Term::bind(syms::fns1_lambda(), {b->vars[0]}, b->body);
      return Term::apply(Term::sym(syms::minmax1_max()),
                         {Term::apply(Term::sym(syms::set1_map()), {lambda, set})});
    }
  }
  ext_error("NotAMaxForm", "expected minmax2.max_sf or a minmax2.max binder");
}

Term lower_argmax(const Term& t) {
  const auto* b = as_bind(t);
  if (!b || !(b->binder == syms::minmax2_argmax()))
    ext_error("NotArgmaxForm", "expected a minmax2.argmax binder");
  if (b->vars.size() != 1)
    ext_error("NotArgmaxForm", "argmax takes exactly one bound variable");
  Term set = membership_set(*b, "NotArgmaxForm");
  const BoundVar& x = b->vars[0];
  const Term& f = b->body;

  std::set<std::string> avoid = all_names(f);
  auto set_names = all_names(set);
  avoid.insert(set_names.begin(), set_names.end());
  avoid.insert(x.name);
  std::string y = pick_fresh("y", avoid);

  // {x in S | f(x) = max (map (lambda y. f(y)) S)}
  Term inner_lambda = Term::bind(syms::fns1_lambda(), {BoundVar{y, x.sort}},
                                 subst_var(f, x.name, y));
  Term max_over_set =
      Term::apply(Term::sym(syms::minmax1_max()),
                  {Term::apply(Term::sym(syms::set1_map()), {inner_lambda, set})});
  Term pred = Term::bind(syms::fns1_lambda(), {x},
                         Term::apply(Term::sym(syms::relation1_eq()), {f, max_over_set}));
  return Term::apply(Term::sym(syms::set1_suchthat()), {set, pred});
}

Script lower_argmaxone_to_script(const OptimizationGoal& goal,
                                 const std::vector<Term>& constraints) {
  SignatureTable table = SignatureTable::standard();
  return lower_argmaxone_to_script(goal, constraints, table);
}

Script lower_argmaxone_to_script(const OptimizationGoal& goal,
                                 const std::vector<Term>& constraints,
                                 const SignatureTable& table) {
  SignatureTable scoped = table;
  for (const auto& [name, sort] : goal.witness_vars) {
    scoped.declare_fun(name, {}, sort);
    scoped.var_sorts[name] = sort;
  }
  try {
    for (const auto& c : constraints) check_sorts(c, scoped);
    check_sorts(goal.objective, scoped);
  } catch (const Error& e) {
    throw Error(ErrorClass::Extension, "UnsortedGoal",
                std::string("goal does not sort-check: ") + e.what());
  }

  Script script;
  for (const auto& [name, sort] : goal.witness_vars) {
    Command decl;
    decl.kind = Command::Kind::DeclareFun;
    decl.name = name;
    decl.result_sort = sort;
    script.commands.push_back(std::move(decl));
  }
  for (const auto& c : constraints) {
    Command assert_cmd;
    assert_cmd.kind = Command::Kind::Assert;
    assert_cmd.term = c;
    script.commands.push_back(std::move(assert_cmd));
  }
  Command goal_cmd;
  goal_cmd.kind = goal.direction == OptimizationGoal::Direction::Maximize
                      ? Command::Kind::Maximize
                      : Command::Kind::Minimize;
  goal_cmd.term = goal.objective;
  script.commands.push_back(std::move(goal_cmd));
  Command check;
  check.kind = Command::Kind::CheckSat;
  script.commands.push_back(std::move(check));
  Command get;
  get.kind = Command::Kind::GetValue;
  for (const auto& [name, sort] : goal.witness_vars)
    get.terms.push_back(Term::sym(syms::smt(name)));
  script.commands.push_back(std::move(get));
  return script;
}

namespace {

Term convert_max_node(const Term& t, DesugarStrategy::MaxForm target) {
  if (target == DesugarStrategy::MaxForm::SetFunctionOperator) {
    const auto* b = as_bind(t);
    if (!b || !(b->binder == syms::minmax2_max())) return t;
    if (b->vars.size() != 1) return t;
    Term set = membership_set(*b, "NotAMaxForm");
    Term lambda = Term::bind(syms::fns1_lambda(), {b->vars[0]}, b->body);
    return Term::apply(Term::sym(syms::minmax2_max_sf()), {set, lambda});
  }
  const auto* a = as_apply(t);
  const auto* h = a ? as_sym(a->head) : nullptr;
  if (!h || !(h->symbol == syms::minmax2_max_sf()) || a->args.size() != 2) return t;
  const Term& set = a->args[0];
  const Term& fn = a->args[1];
  if (const auto* lam = as_bind(fn); lam && lam->binder == syms::fns1_lambda() &&
                                     lam->vars.size() == 1 && !lam->condition) {
    BoundVar v = lam->vars[0];
    Term body = lam->body;
    if (free_variables(set).count(v.name)) {
      std::set<std::string> avoid = all_names(body);
      auto sn = all_names(set);
      avoid.insert(sn.begin(), sn.end());
      std::string fresh = fresh_name(v.name, avoid);
      body = subst_var(body, v.name, fresh);
      v.name = fresh;
    }
    Term cond = Term::apply(Term::sym(syms::set1_in()), {Term::var(v.name), set});
    return Term::bind_conditional(syms::minmax2_max(), {v}, body, cond);
  }
  // a non-lambda function: eta-expand
  std::set<std::string> avoid = all_names(t);
  std::string x = avoid.count("x") ? fresh_name("x", avoid) : "x";
  Term cond = Term::apply(Term::sym(syms::set1_in()), {Term::var(x), set});
  Term body = Term::apply(fn, {Term::var(x)});
  return Term::bind_conditional(syms::minmax2_max(), {BoundVar{x, std::nullopt}}, body, cond);
}

template <typename Fn>
Term map_children(const Term& t, Fn&& rec) {
  if (const auto* a = as_apply(t)) {
    std::vector<Term> args;
    args.reserve(a->args.size());
    for (const auto& x : a->args) args.push_back(rec(x));
    return Term::apply(rec(a->head), std::move(args));
  }
  if (const auto* b = as_bind(t)) {
    Term body = rec(b->body);
    if (b->condition)
      return Term::bind_conditional(b->binder, b->vars, std::move(body), rec(*b->condition));
    return Term::bind(b->binder, b->vars, std::move(body));
  }
  if (const auto* at = as_attr(t)) {
    std::vector<std::pair<Symbol, Term>> pairs;
    for (const auto& [k, v] : at->pairs) pairs.emplace_back(k, rec(v));
    return Term::attributed(std::move(pairs), rec(at->base));
  }
  if (const auto* e = as_error(t)) {
    std::vector<Term> args;
    for (const auto& x : e->args) args.push_back(rec(x));
    return Term::error_term(e->symbol, std::move(args));
  }
  return t;
}

Term desugar_node(const Term& t, const DesugarStrategy& strat) {
  if (const auto* b = as_bind(t)) {
    if (b->binder == syms::quant2_exists_unique()) return desugar_exists_unique(t, strat);
    if (b->binder == syms::minmax2_max()) return lower_max(t);
    if (b->binder == syms::minmax2_argmax()) return lower_argmax(t);
    if (b->binder == syms::minmax2_argmaxone())
      ext_error("ArgmaxOneNotTerm",
                "argmaxone denotes a witness point; lower it to a script instead");
  }
  if (const auto* a = as_apply(t)) {
    const auto* h = as_sym(a->head);
    if (h && h->symbol == syms::minmax2_max_sf()) return lower_max(t);
  }
  return t;
}

}  // namespace

Term convert_max_form(const Term& t, DesugarStrategy::MaxForm target) {
  Term rebuilt = map_children(t, [&](const Term& c) { return convert_max_form(c, target); });
  return convert_max_node(rebuilt, target);
}

Term desugar_all(const Term& t, const DesugarStrategy& strat) {
  Term rebuilt = map_children(t, [&](const Term& c) { return desugar_all(c, strat); });
  Term out = desugar_node(rebuilt, strat);
  return out;
}

}  // namespace mathbridge
