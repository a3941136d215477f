#ifndef MATHBRIDGE_EXTENSIONS_HPP
#define MATHBRIDGE_EXTENSIONS_HPP

#include <string>
#include <vector>

#include "mathbridge/smtlib.hpp"
#include "mathbridge/sorts.hpp"
#include "mathbridge/term.hpp"

namespace mathbridge {

struct DesugarStrategy {
  // Eq-1 style introduces one alternation but fewer quantifiers and only two
  // copies of the body; Eq-2 style has no alternation at the price of a third
  // copy.
  enum class ExistsUnique { Alternation, TwoQuantifier };
  // The two proposed max constructors: an operator taking (set, function), or
  // a binder with a restricting predicate.
  enum class MaxForm { SetFunctionOperator, RestrictedBinder };

  ExistsUnique exists_unique = ExistsUnique::Alternation;
  MaxForm max_form = MaxForm::SetFunctionOperator;
};

struct OptimizationGoal {
  enum class Direction { Maximize, Minimize };
  Direction direction = Direction::Maximize;
  Term objective;  // SMT vocabulary
  std::vector<std::pair<std::string, Sort>> witness_vars;
};

// quant2.exists_unique over one variable; result uses only quant1/logic1/
// relation1 symbols. Errors: NotExistsUnique, MultiVarNotSupported.
Term desugar_exists_unique(const Term& b, const DesugarStrategy& strat);

// Either max form to the standard minmax1.max(set1.map(...)) idiom. The
// binder form requires a membership condition "x in S" naming the bound
// variable. Errors: NotAMaxForm, ConditionMissing.
Term lower_max(const Term& t);

// minmax2.argmax to the set comprehension {x in S | f(x) = max f over S}.
// Error: NotArgmaxForm.
Term lower_argmax(const Term& t);

// Witness-style optimization: declarations, asserts, maximize/minimize,
// check-sat, get-value. Error: UnsortedGoal.
Script lower_argmaxone_to_script(const OptimizationGoal& goal,
                                 const std::vector<Term>& constraints);
Script lower_argmaxone_to_script(const OptimizationGoal& goal,
                                 const std::vector<Term>& constraints,
                                 const SignatureTable& table);

// Rewrites between the two max encodings without lowering.
Term convert_max_form(const Term& t, DesugarStrategy::MaxForm target);

// Bottom-up pass eliminating every extension constructor; the result contains
// no Extension-origin symbol. argmaxone has no term-level lowering (a witness
// is a solver artifact) and is rejected here; callers route top-level
// argmaxone binds through the script path.
Term desugar_all(const Term& t, const DesugarStrategy& strat);

}  // namespace mathbridge

#endif
