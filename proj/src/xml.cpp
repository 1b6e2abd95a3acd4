#include "vrtile/xml.hpp"

#include <cctype>

#include "vrtile/errors.hpp"

namespace vrtile::xml {

namespace {

std::string strip_prefix(std::string_view name) {
    auto pos = name.rfind(':');
    return std::string(pos == std::string_view::npos ? name : name.substr(pos + 1));
}

class Scanner {
public:
    explicit Scanner(std::string_view text) : text_(text) {}

    Element parse() {
        skip_misc();
        if (eof()) fail("document has no root element");
        Element root = parse_element();
        skip_misc();
        if (!eof()) fail("content after the root element");
        return root;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    char take() {
        char c = text_[pos_++];
        if (c == '\n') ++line_;
        return c;
    }

    bool consume(std::string_view token) {
        if (text_.substr(pos_, token.size()) != token) return false;
        for (std::size_t i = 0; i < token.size(); ++i) take();
        return true;
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError("xml-syntax", "line " + std::to_string(line_), message);
    }

    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) take();
    }

    void skip_until(std::string_view terminator) {
        while (!eof()) {
            if (consume(terminator)) return;
            take();
        }
        fail("unterminated construct, expected " + std::string(terminator));
    }

    // Whitespace, comments, the XML declaration, PIs and DOCTYPE.
    void skip_misc() {
        for (;;) {
            skip_ws();
            if (consume("<!--")) {
                skip_until("-->");
            } else if (consume("<?")) {
                skip_until("?>");
            } else if (consume("<!")) {
                skip_until(">");
            } else {
                return;
            }
        }
    }

    std::string parse_name() {
        std::size_t start = pos_;
        while (!eof()) {
            char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == ':' ||
                c == '.') {
                take();
            } else {
                break;
            }
        }
        if (pos_ == start) fail("expected a name");
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string parse_attribute_value() {
        char quote = take();
        if (quote != '"' && quote != '\'') fail("attribute value must be quoted");
        std::string value;
        while (!eof() && peek() != quote) {
            char c = take();
            if (c == '&') {
                value += parse_entity();
            } else {
                value += c;
            }
        }
        if (eof()) fail("unterminated attribute value");
        take();  // closing quote
        return value;
    }

    std::string parse_entity() {
        std::size_t semi = text_.find(';', pos_);
        if (semi == std::string_view::npos || semi - pos_ > 8) fail("malformed entity reference");
        std::string_view body = text_.substr(pos_, semi - pos_);
        while (pos_ <= semi) take();
        if (body == "amp") return "&";
        if (body == "lt") return "<";
        if (body == "gt") return ">";
        if (body == "quot") return "\"";
        if (body == "apos") return "'";
        if (!body.empty() && body[0] == '#') {
            int base = 10;
            std::string digits(body.substr(1));
            if (!digits.empty() && (digits[0] == 'x' || digits[0] == 'X')) {
                base = 16;
                digits.erase(0, 1);
            }
            try {
                unsigned long code = std::stoul(digits, nullptr, base);
                if (code == 0 || code > 0x7f) fail("unsupported character reference");
                return std::string(1, static_cast<char>(code));
            } catch (const std::logic_error&) {
                fail("malformed character reference");
            }
        }
        fail("unknown entity &" + std::string(body) + ";");
    }

    Element parse_element() {
        if (!consume("<")) fail("expected '<'");
        Element element;
        element.line = line_;
        element.name = strip_prefix(parse_name());

        for (;;) {
            skip_ws();
            if (eof()) fail("unterminated start tag <" + element.name + ">");
            if (consume("/>")) return element;
            if (consume(">")) break;
            std::string attr_name = strip_prefix(parse_name());
            skip_ws();
            if (!consume("=")) fail("expected '=' after attribute " + attr_name);
            skip_ws();
            element.attributes.emplace_back(std::move(attr_name), parse_attribute_value());
        }

        // Content: child elements and ignorable character data.
        for (;;) {
            if (eof()) fail("missing end tag </" + element.name + ">");
            if (consume("<!--")) {
                skip_until("-->");
            } else if (consume("<![CDATA[")) {
                skip_until("]]>");
            } else if (consume("</")) {
                std::string closing = strip_prefix(parse_name());
                if (closing != element.name)
                    fail("mismatched end tag </" + closing + ">, expected </" + element.name + ">");
                skip_ws();
                if (!consume(">")) fail("malformed end tag");
                return element;
            } else if (peek() == '<') {
                element.children.push_back(parse_element());
            } else {
                take();
            }
        }
    }
};

}  // namespace

const std::string* Element::attr(std::string_view attr_name) const {
    for (const auto& [name_, value] : attributes)
        if (name_ == attr_name) return &value;
    return nullptr;
}

std::vector<const Element*> Element::children_named(std::string_view child_name) const {
    std::vector<const Element*> out;
    for (const Element& child : children)
        if (child.name == child_name) out.push_back(&child);
    return out;
}

const Element* Element::first_child(std::string_view child_name) const {
    for (const Element& child : children)
        if (child.name == child_name) return &child;
    return nullptr;
}

Element parse_document(std::string_view text) { return Scanner(text).parse(); }

std::string escape_attribute(std::string_view value) {
    std::string out;
    out.reserve(value.size());
    for (char c : value) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace vrtile::xml
