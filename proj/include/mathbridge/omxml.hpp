#ifndef MATHBRIDGE_OMXML_HPP
#define MATHBRIDGE_OMXML_HPP

#include <optional>
#include <string>
#include <vector>

#include "mathbridge/term.hpp"

namespace mathbridge {

// An OpenMath object document (the OMOBJ wrapper).
struct OmDocument {
  Term root;
  std::optional<std::string> cdbase;
  std::string version = "2.0";

  bool operator==(const OmDocument&) const = default;
};

// Parses the OpenMath XML encoding. An enclosing OMOBJ (and a transparent FMP
// wrapper, as content dictionaries use) is accepted; a bare object is too.
// Errors: XmlSyntax, UnknownElement, EmptyApplication, MissingBvar, BadInteger.
OmDocument parse_om_xml(const std::string& text);

// Two-space indented canonical form; output reparses structurally equal.
// Error: Unprintable (Foreign blob that cannot be embedded, SMT-only literal
// kinds that have no OpenMath element). Non-fatal advisories (e.g. printing a
// nullary application) are appended to `warnings` when given.
std::string print_om_xml(const OmDocument& doc);
std::string print_om_xml(const OmDocument& doc, std::vector<std::string>* warnings);

}  // namespace mathbridge

#endif
