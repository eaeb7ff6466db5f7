#include "guioracle/layout/extractor.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

namespace guioracle::layout {

using core::GuiState;
using core::Label;
using core::Rect;
using core::WidgetNode;

namespace {

// Recursive-descent parser for the UIAutomator dump dialect: an optional
// XML declaration, then element trees whose tags are <hierarchy> or <node>,
// attributes double-quoted, entities limited to the XML built-ins plus
// numeric references. No other dialect is supported.
class DumpParser {
public:
    explicit DumpParser(std::string_view text) : text_(text) {}

    ParsedDump parse() {
        skip_ws();
        skip_declaration();
        skip_ws();
        Element root_elem = parse_element();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing content after document element");

        ParsedDump result;
        if (root_elem.tag == "hierarchy") {
            if (root_elem.children.size() != 1) {
                fail("hierarchy element must contain exactly one root node");
            }
            result.root = to_widget(root_elem.children[0], result.package);
        } else {
            result.root = to_widget(root_elem, result.package);
        }
        return result;
    }

private:
    struct Element {
        std::string tag;
        std::map<std::string, std::string> attributes;
        std::vector<Element> children;
    };

    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& why) const {
        throw MalformedDump(why + " (offset " + std::to_string(pos_) + ")");
    }

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    void expect(char c) {
        if (eof() || peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    bool consume(std::string_view token) {
        if (text_.substr(pos_, token.size()) == token) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    void skip_declaration() {
        if (consume("<?")) {
            const auto end = text_.find("?>", pos_);
            if (end == std::string_view::npos) fail("unterminated XML declaration");
            pos_ = end + 2;
        }
    }

    std::string parse_name() {
        const std::size_t start = pos_;
        while (!eof()) {
            const char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ||
                c == ':' || c == '.') {
                ++pos_;
            } else {
                break;
            }
        }
        if (pos_ == start) fail("expected a name");
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string parse_attribute_value() {
        expect('"');
        std::string value;
        while (true) {
            if (eof()) fail("unterminated attribute value");
            const char c = peek();
            if (c == '"') {
                ++pos_;
                return value;
            }
            if (c == '&') {
                value += parse_entity();
            } else if (c == '<') {
                fail("raw '<' inside attribute value");
            } else {
                value += c;
                ++pos_;
            }
        }
    }

    std::string parse_entity() {
        expect('&');
        const auto end = text_.find(';', pos_);
        if (end == std::string_view::npos || end - pos_ > 10) fail("unterminated entity");
        const std::string_view name = text_.substr(pos_, end - pos_);
        pos_ = end + 1;
        if (name == "amp") return "&";
        if (name == "lt") return "<";
        if (name == "gt") return ">";
        if (name == "quot") return "\"";
        if (name == "apos") return "'";
        if (!name.empty() && name[0] == '#') {
            unsigned long code = 0;
            const bool hex = name.size() > 1 && (name[1] == 'x' || name[1] == 'X');
            const std::string digits(name.substr(hex ? 2 : 1));
            if (digits.empty()) fail("empty character reference");
            std::size_t used = 0;
            code = std::stoul(digits, &used, hex ? 16 : 10);
            if (used != digits.size()) fail("bad character reference");
            return encode_utf8(code);
        }
        fail("unknown entity &" + std::string(name) + ";");
    }

    static std::string encode_utf8(unsigned long code) {
        std::string out;
        if (code < 0x80) {
            out += static_cast<char>(code);
        } else if (code < 0x800) {
            out += static_cast<char>(0xC0 | (code >> 6));
            out += static_cast<char>(0x80 | (code & 0x3F));
        } else if (code < 0x10000) {
            out += static_cast<char>(0xE0 | (code >> 12));
            out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (code & 0x3F));
        } else {
            out += static_cast<char>(0xF0 | (code >> 18));
            out += static_cast<char>(0x80 | ((code >> 12) & 0x3F));
            out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (code & 0x3F));
        }
        return out;
    }

    Element parse_element() {
        expect('<');
        Element elem;
        elem.tag = parse_name();
        while (true) {
            skip_ws();
            if (eof()) fail("unterminated element " + elem.tag);
            if (consume("/>")) return elem;
            if (consume(">")) break;
            const std::string attr = parse_name();
            skip_ws();
            expect('=');
            skip_ws();
            elem.attributes[attr] = parse_attribute_value();
        }
        // Children until the matching close tag. Text content is not part of
        // the dump dialect and is rejected.
        while (true) {
            skip_ws();
            if (eof()) fail("missing close tag for " + elem.tag);
            if (consume("</")) {
                const std::string closing = parse_name();
                if (closing != elem.tag) {
                    fail("mismatched close tag: expected " + elem.tag + ", got " + closing);
                }
                skip_ws();
                expect('>');
                return elem;
            }
            if (peek() != '<') fail("unexpected text content inside " + elem.tag);
            elem.children.push_back(parse_element());
        }
    }

    static bool parse_bool(const std::map<std::string, std::string>& attrs, const char* name) {
        const auto it = attrs.find(name);
        return it != attrs.end() && it->second == "true";
    }

    static std::string attr_or_empty(const std::map<std::string, std::string>& attrs,
                                     const char* name) {
        const auto it = attrs.find(name);
        return it == attrs.end() ? std::string() : it->second;
    }

    Rect parse_bounds(const std::string& value) {
        // "[l,t][r,b]"
        int nums[4];
        std::size_t pos = 0;
        int filled = 0;
        const auto read_int = [&](char lead) -> int {
            if (pos >= value.size() || value[pos] != lead) fail("unparseable bounds: " + value);
            ++pos;
            int out = 0;
            const auto begin = value.data() + pos;
            const auto end = value.data() + value.size();
            const auto [next, ec] = std::from_chars(begin, end, out);
            if (ec != std::errc()) fail("unparseable bounds: " + value);
            pos += static_cast<std::size_t>(next - begin);
            return out;
        };
        nums[filled++] = read_int('[');
        nums[filled++] = read_int(',');
        if (pos >= value.size() || value[pos] != ']') fail("unparseable bounds: " + value);
        ++pos;
        nums[filled++] = read_int('[');
        nums[filled++] = read_int(',');
        if (pos + 1 != value.size() || value[pos] != ']') fail("unparseable bounds: " + value);
        return Rect{nums[0], nums[1], nums[2], nums[3]};
    }

    WidgetNode to_widget(const Element& elem, std::string& package) {
        if (elem.tag != "node") fail("unexpected element <" + elem.tag + ">");
        WidgetNode node;
        node.class_name = attr_or_empty(elem.attributes, "class");
        node.text = attr_or_empty(elem.attributes, "text");
        node.content_desc = attr_or_empty(elem.attributes, "content-desc");
        node.resource_id = attr_or_empty(elem.attributes, "resource-id");
        node.clickable = parse_bool(elem.attributes, "clickable");
        node.long_clickable = parse_bool(elem.attributes, "long-clickable");
        node.checkable = parse_bool(elem.attributes, "checkable");
        node.enabled = parse_bool(elem.attributes, "enabled");
        if (const auto it = elem.attributes.find("bounds"); it != elem.attributes.end()) {
            node.bounds = parse_bounds(it->second);
        }
        if (package.empty()) {
            package = attr_or_empty(elem.attributes, "package");
        }
        for (const Element& child : elem.children) {
            node.children.push_back(to_widget(child, package));
        }
        return node;
    }
};

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

std::uint64_t fnv1a(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ull) {
    std::uint64_t hash = seed;
    for (const char c : data) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001b3ull;
    }
    return hash;
}

void fingerprint_visit(const WidgetNode& node, std::uint64_t& sum, std::uint64_t& count) {
    const auto label = core::make_label(trim(node.text), trim(node.content_desc));
    std::string entry = node.class_name;
    entry += '\x1f';
    entry += node.resource_id;
    entry += '\x1f';
    entry += label ? label->rendered : std::string();
    // Commutative sum keeps the hash a multiset over nodes, independent of
    // traversal order.
    sum += fnv1a(entry);
    ++count;
    for (const WidgetNode& child : node.children) fingerprint_visit(child, sum, count);
}

std::size_t rendered_length(const GuiState& state) {
    std::size_t total = 0;
    for (const std::string& line : core::render_state_lines(state)) total += line.size();
    return total;
}

void truncate_list(GuiState& state, std::vector<Label>& list) {
    std::size_t dropped = 0;
    while (rendered_length(state) > kStateCharBudget && !list.empty()) {
        list.pop_back();
        ++dropped;
    }
    if (dropped > 0) {
        list.push_back(Label{"[truncated " + std::to_string(dropped) + " items]"});
    }
}

void extract_visit(const WidgetNode& node, GuiState& state) {
    const auto label = core::make_label(trim(node.text), trim(node.content_desc));
    if (label) {
        bool executable = false;
        if (node.clickable) {
            state.clickable.push_back(*label);
            executable = true;
        }
        if (node.long_clickable) {
            state.long_clickable.push_back(*label);
            executable = true;
        }
        if (node.checkable) {
            state.checkable.push_back(*label);
            executable = true;
        }
        if (!executable) {
            state.other_texts.push_back(*label);
        }
    }
    for (const WidgetNode& child : node.children) extract_visit(child, state);
}

}  // namespace

ParsedDump parse_document(std::string_view dump) {
    return DumpParser(dump).parse();
}

WidgetNode parse_hierarchy(std::string_view dump) {
    return parse_document(dump).root;
}

std::string page_fingerprint(const WidgetNode& root) {
    std::uint64_t sum = 0;
    std::uint64_t count = 0;
    fingerprint_visit(root, sum, count);
    std::ostringstream out;
    out << std::hex << sum << '-' << count;
    return out.str();
}

GuiState extract_state(const WidgetNode& root, std::optional<std::filesystem::path> screenshot) {
    GuiState state;
    extract_visit(root, state);
    state.screenshot = std::move(screenshot);
    state.page_fingerprint = page_fingerprint(root);
    truncate_list(state, state.other_texts);
    truncate_list(state, state.long_clickable);
    return state;
}

}  // namespace guioracle::layout
