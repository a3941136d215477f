#ifndef MATHBRIDGE_XML_READER_HPP
#define MATHBRIDGE_XML_READER_HPP

// Minimal XML reader covering what the OpenMath XML encoding and the STS
// signature files actually use: elements, attributes, character data, the
// five named entities plus numeric references, comments and an XML
// declaration. No DTDs, no namespaces beyond verbatim attribute storage.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mathbridge/error.hpp"

namespace mathbridge::xml {

struct Element {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attrs;  // document order
  std::vector<Element> children;
  std::string text;      // concatenated character data directly inside this element
  std::string raw_inner; // verbatim inner markup (for OMFOREIGN passthrough)
  SourcePos pos;

  const std::string* attr(const std::string& key) const {
    for (const auto& [k, v] : attrs)
      if (k == key) return &v;
    return nullptr;
  }
};

// Parses a document with a single root element. Throws Error(Parse, "XmlSyntax").
Element parse_document(const std::string& text);

std::string escape_text(const std::string& s);
std::string escape_attr(const std::string& s);

}  // namespace mathbridge::xml

#endif
