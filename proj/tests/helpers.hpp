#ifndef MATHBRIDGE_TEST_HELPERS_HPP
#define MATHBRIDGE_TEST_HELPERS_HPP

#include <fstream>
#include <sstream>
#include <string>

#include "mathbridge/term.hpp"

namespace mbtest {

inline std::string fixture_path(const std::string& name) {
  return std::string(FIXTURE_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name), std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing fixture ", name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline mathbridge::Term sym(const char* cd, const char* name) {
  return mathbridge::Term::sym(mathbridge::syms::om(cd, name));
}

inline mathbridge::Term smt(const char* token) {
  return mathbridge::Term::sym(mathbridge::syms::smt(token));
}

inline mathbridge::Term var(const char* name) { return mathbridge::Term::var(name); }

inline mathbridge::Term num(const char* digits) {
  return mathbridge::Term::lit(mathbridge::Literal::integer(digits));
}

}  // namespace mbtest

#endif
