#ifndef MATHBRIDGE_RATIONAL_HPP
#define MATHBRIDGE_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace mathbridge {

// Exact arithmetic for the evaluator; cpp_rational keeps lowest terms itself.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Accepts "7", "-3", "1/2", "-3/4", and decimal spellings like "0.25".
Rational parse_rational(const std::string& text);

// "p/q" in lowest terms, or just "p" for integers.
std::string rational_str(const Rational& r);

bool is_integer(const Rational& r);

}  // namespace mathbridge

#endif
