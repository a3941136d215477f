#ifndef MATHBRIDGE_POPCORN_HPP
#define MATHBRIDGE_POPCORN_HPP

#include <string>
#include <vector>

#include "mathbridge/term.hpp"

namespace mathbridge {

// POPCORN dialect used here (the paper leaves the grammar open):
//   variables        $x
//   symbols          cd.name
//   application      f(a, b)        nullary f() allowed, printers warn
//   binders          cd.name[$x, $y : Sort] -> body
//   restricted bind  cd.name[$x] -> body where condition
//   attributions     base{cd.name -> value, ...}
//   errors           cd.name!(args)
//   byte arrays      %0aff%
//   infix (low to high): ->  or  and  (= != < <= in)  (+ -)  (* /)  unary -
//   all left-associative except ->, which is right-associative.
struct PopcornConfig {
  enum class Mode { Qualified, Sugared };
  Mode sugar = Mode::Qualified;
};

// Errors: Syntax (position-reported), UnknownInfix, UnboundSugar.
Term parse_popcorn(const std::string& text);

// Errors: Unprintable (Foreign, SMT-only literal kinds).
std::string print_popcorn(const Term& t, const PopcornConfig& cfg,
                          std::vector<std::string>* warnings = nullptr);

}  // namespace mathbridge

#endif
