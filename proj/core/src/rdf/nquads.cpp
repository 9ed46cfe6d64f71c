#include "dgkit/rdf/nquads.hpp"

#include <algorithm>
#include <cctype>

#include "dgkit/errors.hpp"

namespace dgkit::rdf {

namespace {

struct LineCursor {
    std::string_view line;
    std::size_t pos = 0;
    std::size_t line_no;

    bool eof() const { return pos >= line.size(); }
    char peek(std::size_t ahead = 0) const {
        return pos + ahead < line.size() ? line[pos + ahead] : '\0';
    }
    char next() { return line[pos++]; }
    void skip_ws() {
        while (!eof() && (peek() == ' ' || peek() == '\t')) ++pos;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_no, pos + 1);
    }
};

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::uint32_t parse_hex(LineCursor& cur, int width) {
    std::uint32_t cp = 0;
    for (int i = 0; i < width; ++i) {
        if (cur.eof()) cur.fail("truncated unicode escape");
        char c = cur.next();
        cp <<= 4;
        if (c >= '0' && c <= '9') cp |= static_cast<std::uint32_t>(c - '0');
        else if (c >= 'a' && c <= 'f') cp |= static_cast<std::uint32_t>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') cp |= static_cast<std::uint32_t>(c - 'A' + 10);
        else cur.fail("bad hex digit in unicode escape");
    }
    return cp;
}

Iri parse_iriref(LineCursor& cur) {
    if (cur.peek() != '<') cur.fail("expected IRI");
    cur.next();
    std::string value;
    while (true) {
        if (cur.eof()) cur.fail("unterminated IRI");
        char c = cur.next();
        if (c == '>') break;
        if (c == '\\') {
            char kind = cur.eof() ? '\0' : cur.next();
            if (kind != 'u' && kind != 'U') cur.fail("unsupported escape in IRI");
            append_utf8(value, parse_hex(cur, kind == 'u' ? 4 : 8));
            continue;
        }
        if (c == ' ' || c == '\t' || c == '<' || c == '"') cur.fail("illegal character in IRI");
        value.push_back(c);
    }
    if (!is_valid_iri(value)) cur.fail("malformed IRI <" + value + ">");
    return Iri{value};
}

Literal parse_literal(LineCursor& cur) {
    cur.next(); // opening quote
    std::string lexical;
    while (true) {
        if (cur.eof()) cur.fail("unterminated string literal");
        char c = cur.next();
        if (c == '"') break;
        if (c == '\\') {
            if (cur.eof()) cur.fail("dangling escape");
            char e = cur.next();
            switch (e) {
            case 't': lexical.push_back('\t'); break;
            case 'b': lexical.push_back('\b'); break;
            case 'n': lexical.push_back('\n'); break;
            case 'r': lexical.push_back('\r'); break;
            case 'f': lexical.push_back('\f'); break;
            case '"': lexical.push_back('"'); break;
            case '\'': lexical.push_back('\''); break;
            case '\\': lexical.push_back('\\'); break;
            case 'u': append_utf8(lexical, parse_hex(cur, 4)); break;
            case 'U': append_utf8(lexical, parse_hex(cur, 8)); break;
            default: cur.fail(std::string("unknown escape '\\") + e + "'");
            }
            continue;
        }
        lexical.push_back(c);
    }
    if (cur.peek() == '@') {
        cur.next();
        std::string lang;
        while (!cur.eof() &&
               (std::isalnum(static_cast<unsigned char>(cur.peek())) || cur.peek() == '-'))
            lang.push_back(cur.next());
        if (lang.empty()) cur.fail("empty language tag");
        return Literal{lexical, std::nullopt, lang};
    }
    if (cur.peek() == '^' && cur.peek(1) == '^') {
        cur.next();
        cur.next();
        return Literal{lexical, parse_iriref(cur)};
    }
    return Literal{lexical};
}

BlankNode parse_blank(LineCursor& cur) {
    cur.next();
    cur.next(); // "_:"
    std::string label;
    while (!cur.eof() && (std::isalnum(static_cast<unsigned char>(cur.peek())) ||
                          cur.peek() == '_' || cur.peek() == '-'))
        label.push_back(cur.next());
    if (label.empty()) cur.fail("empty blank node label");
    return BlankNode{label};
}

Term parse_term(LineCursor& cur, bool allow_literal) {
    char c = cur.peek();
    if (c == '<') return parse_iriref(cur);
    if (c == '_' && cur.peek(1) == ':') return parse_blank(cur);
    if (c == '"') {
        if (!allow_literal) cur.fail("literal not allowed in this position");
        return parse_literal(cur);
    }
    cur.fail("expected IRI, blank node or literal");
}

} // namespace

std::vector<Quad> parse_nquads(std::string_view text, const Iri& default_graph) {
    std::vector<Quad> quads;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(start, end - start);
        ++line_no;
        start = end + 1;
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

        LineCursor cur{raw, 0, line_no};
        cur.skip_ws();
        if (cur.eof() || cur.peek() == '#') {
            if (end == text.size()) break;
            continue;
        }

        Term subject = parse_term(cur, false);
        cur.skip_ws();
        Term pred = parse_term(cur, false);
        if (!is_iri(pred)) cur.fail("predicate must be an IRI");
        cur.skip_ws();
        Term object = parse_term(cur, true);
        cur.skip_ws();

        Iri graph = default_graph;
        if (!cur.eof() && cur.peek() != '.') {
            Term g = parse_term(cur, false);
            if (!is_iri(g)) cur.fail("graph term must be an IRI");
            graph = std::get<Iri>(g);
            cur.skip_ws();
        }
        if (cur.eof() || cur.peek() != '.') cur.fail("expected '.' terminating line");
        cur.next();
        cur.skip_ws();
        if (!cur.eof() && cur.peek() != '#') cur.fail("trailing content after '.'");

        quads.push_back(Quad{subject, std::get<Iri>(pred), object, graph});
        if (end == text.size()) break;
    }
    return quads;
}

std::string serialize_nquads(const std::vector<Quad>& quads) {
    std::vector<Quad> sorted = quads;
    std::sort(sorted.begin(), sorted.end(), quad_less);
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::string out;
    for (const auto& q : sorted) {
        out += term_ntriples(q.subject);
        out += ' ';
        out += term_ntriples(Term{q.predicate});
        out += ' ';
        out += term_ntriples(q.object);
        out += ' ';
        out += term_ntriples(Term{q.graph});
        out += " .\n";
    }
    return out;
}

} // namespace dgkit::rdf
