#include "dgkit/rdf/term.hpp"

#include <algorithm>

namespace dgkit::rdf {

bool is_valid_iri(std::string_view s) {
    if (s.empty()) return false;
    auto colon = s.find(':');
    if (colon == std::string_view::npos || colon == 0) return false;
    for (char c : s) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') return false;
        if (c == '<' || c == '>' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' || c == '`')
            return false;
        if (static_cast<unsigned char>(c) < 0x20) return false;
    }
    return true;
}

Literal::Literal(std::string lexical, std::optional<Iri> datatype,
                 std::optional<std::string> language)
    : lexical_(std::move(lexical)), datatype_(std::move(datatype)), language_(std::move(language)) {
    if (datatype_ && datatype_->value == xsd::ns + "string") datatype_.reset();
    if (language_) datatype_.reset(); // mutually exclusive; language wins
}

bool is_iri(const Term& t) { return std::holds_alternative<Iri>(t); }
bool is_blank(const Term& t) { return std::holds_alternative<BlankNode>(t); }
bool is_literal(const Term& t) { return std::holds_alternative<Literal>(t); }

std::string term_text(const Term& t) {
    if (auto* i = std::get_if<Iri>(&t)) return i->value;
    if (auto* b = std::get_if<BlankNode>(&t)) return "_:" + b->label;
    return std::get<Literal>(t).lexical();
}

std::string term_key(const Term& t) {
    if (auto* i = std::get_if<Iri>(&t)) return "I" + i->value;
    if (auto* b = std::get_if<BlankNode>(&t)) return "B" + b->label;
    const auto& l = std::get<Literal>(t);
    std::string key = "L" + l.lexical();
    key.push_back('\x1f');
    if (l.datatype()) key += l.datatype()->value;
    key.push_back('\x1f');
    if (l.language()) key += *l.language();
    return key;
}

namespace {
std::string escape_literal(std::string_view s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
        case '\\': out += "\\\\"; break;
        case '"': out += "\\\""; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                static const char* hexd = "0123456789ABCDEF";
                out += "\\u00";
                out.push_back(hexd[(c >> 4) & 0xF]);
                out.push_back(hexd[c & 0xF]);
            } else {
                out.push_back(c);
            }
        }
    }
    return out;
}
} // namespace

std::string term_ntriples(const Term& t) {
    if (auto* i = std::get_if<Iri>(&t)) return "<" + i->value + ">";
    if (auto* b = std::get_if<BlankNode>(&t)) return "_:" + b->label;
    const auto& l = std::get<Literal>(t);
    std::string out = "\"" + escape_literal(l.lexical()) + "\"";
    if (l.language()) out += "@" + *l.language();
    else if (l.datatype()) out += "^^<" + l.datatype()->value + ">";
    return out;
}

bool quad_less(const Quad& a, const Quad& b) {
    return quad_key(a) < quad_key(b);
}

std::string quad_key(const Quad& q) {
    std::string key = term_key(q.subject);
    key.push_back('\x1e');
    key += q.predicate.value;
    key.push_back('\x1e');
    key += term_key(q.object);
    key.push_back('\x1e');
    key += q.graph.value;
    return key;
}

bool quad_set_equal(const std::vector<Quad>& a, const std::vector<Quad>& b) {
    std::vector<std::string> ka, kb;
    ka.reserve(a.size());
    kb.reserve(b.size());
    for (const auto& q : a) ka.push_back(quad_key(q));
    for (const auto& q : b) kb.push_back(quad_key(q));
    std::sort(ka.begin(), ka.end());
    std::sort(kb.begin(), kb.end());
    ka.erase(std::unique(ka.begin(), ka.end()), ka.end());
    kb.erase(std::unique(kb.begin(), kb.end()), kb.end());
    return ka == kb;
}

namespace xsd {
Iri string_() { return Iri{ns + "string"}; }
Iri integer() { return Iri{ns + "integer"}; }
Iri decimal() { return Iri{ns + "decimal"}; }
Iri boolean() { return Iri{ns + "boolean"}; }
Iri date() { return Iri{ns + "date"}; }
Iri date_time() { return Iri{ns + "dateTime"}; }
Iri time() { return Iri{ns + "time"}; }
Iri double_() { return Iri{ns + "double"}; }
} // namespace xsd

} // namespace dgkit::rdf
