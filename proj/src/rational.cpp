#include "mathbridge/rational.hpp"

#include <cctype>

#include "mathbridge/error.hpp"

namespace mathbridge {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s = text;
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.erase(s.begin());
  }
  auto bad = [&]() -> Rational {
    throw Error(ErrorClass::Parse, "BadRational", "not a rational: '" + text + "'");
  };
  Rational r;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return bad();
    BigInt q(den);
    if (q == 0) return bad();
    r = Rational(BigInt(num), q);
  } else if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (ip.empty()) ip = "0";
    if (fp.empty()) fp = "0";
    if (!all_digits(ip) || !all_digits(fp)) return bad();
    BigInt scale = 1;
    for (size_t k = 0; k < fp.size(); ++k) scale *= 10;
    r = Rational(BigInt(ip) * scale + BigInt(fp), scale);
  } else {
    if (!all_digits(s)) return bad();
    r = Rational(BigInt(s));
  }
  return neg ? -r : r;
}

std::string rational_str(const Rational& r) {
  if (is_integer(r)) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

bool is_integer(const Rational& r) { return denominator(r) == 1; }

}  // namespace mathbridge
