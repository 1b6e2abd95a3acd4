#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vrtile::xml {

// Element tree with attributes in document order. Names are local names:
// namespace prefixes are stripped so "dash:MPD" matches "MPD". Character
// data, comments, processing instructions and CDATA are skipped; this is
// the subset an MPD needs, not a general XML library.
struct Element {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<Element> children;
    int line = 0;

    const std::string* attr(std::string_view attr_name) const;
    std::vector<const Element*> children_named(std::string_view child_name) const;
    const Element* first_child(std::string_view child_name) const;
};

// Parses a document and returns its root element.
// Throws ParseError("xml-syntax", "line N", ...) on malformed input.
Element parse_document(std::string_view text);

// Minimal attribute-value escaping for the writer side.
std::string escape_attribute(std::string_view value);

}  // namespace vrtile::xml
