#ifndef MATHBRIDGE_ORACLE_HPP
#define MATHBRIDGE_ORACLE_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mathbridge/rational.hpp"
#include "mathbridge/smtlib.hpp"
#include "mathbridge/term.hpp"

namespace mathbridge {

struct FunValue;

// Evaluation result: exact rationals throughout, no floating point.
struct Value {
  enum class Kind { Rational, Boolean, Set, Element, Fun };
  Kind kind = Kind::Boolean;
  Rational rat;
  bool boolean = false;
  std::vector<Value> set;  // deduplicated, canonically ordered
  std::string elem_sort;
  size_t elem_index = 0;
  std::shared_ptr<const FunValue> fun;

  static Value rational(Rational r);
  static Value of_bool(bool b);
  static Value set_of(std::vector<Value> members);  // canonicalizes
  static Value element(std::string sort, size_t index);
  static Value function(std::shared_ptr<const FunValue> f);

  bool operator==(const Value& o) const;
  bool operator<(const Value& o) const;  // canonical order (functions excluded)
  std::string str() const;
};

struct FunValue {
  size_t arity = 0;
  std::function<Value(const std::vector<Value>&)> apply;
};

// Finite-domain interpretation: carriers per sort name, function tables keyed
// by "cd.name" for OpenMath symbols or the bare token for SMT symbols.
struct Interpretation {
  std::map<std::string, std::vector<Value>> carriers;
  std::map<std::string, std::vector<std::pair<std::vector<Value>, Value>>> funs;
  std::map<std::string, Value> var_env;
  std::optional<unsigned> grid;             // resolution for interval_cc
  std::optional<std::string> default_sort;  // carrier for unsorted bound variables

  const std::vector<Value>* carrier(const std::string& sort_name) const;
};

// Text format, '#' comments:
//   sort S = {0, 1/2, 1}      explicit carrier of rationals/booleans
//   sort T = 3                abstract carrier T:0, T:1, T:2
//   fun arith2.times = { (0,0) -> 0, (0,1) -> 0, ... }
//   var x = 1
//   grid = 4
//   default = S
Interpretation parse_interpretation(const std::string& text);

// Errors: InfiniteDomain, NonBooleanQuantifierBody, EmptyMax, and evaluation
// failures such as incomplete function tables.
Value eval(const Term& t, const Interpretation& interp);

// Brute-force satisfiability with lexicographic optimization goals; ties keep
// the first satisfying assignment in carrier enumeration order.
// Errors: InfiniteDomain, NoGoalBeforeGetValue.
SolverResult eval_script(const Script& s, const Interpretation& interp);

// All 2^n Boolean tables over a carrier of size n, each exactly once.
// Error: BoundExceeded when n exceeds the bound.
class PredicateStream {
 public:
  explicit PredicateStream(size_t carrier_size, size_t bound = 4);
  std::optional<std::vector<bool>> next();
  size_t total() const { return size_t{1} << n_; }

 private:
  size_t n_;
  size_t counter_ = 0;
};

// Canonical SMT-LIB value term for a rational or boolean Value.
Term value_to_term(const Value& v);

}  // namespace mathbridge

#endif
