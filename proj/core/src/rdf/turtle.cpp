#include "dgkit/rdf/turtle.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>

#include "dgkit/errors.hpp"
#include "dgkit/rdf/vocab.hpp"

namespace dgkit::rdf {

namespace {

bool is_local_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

bool is_prefix_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

class Cursor {
public:
    Cursor(std::string_view text) : text_(text) {}

    bool eof() const { return pos_ >= text_.size(); }
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }
    char next() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_ws_and_comments() {
        while (!eof()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                next();
            } else if (c == '#') {
                while (!eof() && peek() != '\n') next();
            } else {
                break;
            }
        }
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_, col_);
    }

    std::size_t line() const { return line_; }
    std::size_t col() const { return col_; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
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

class TurtleParser {
public:
    TurtleParser(std::string_view text, Iri base_graph)
        : cur_(text), graph_(std::move(base_graph)) {}

    std::vector<Quad> parse() {
        cur_.skip_ws_and_comments();
        while (!cur_.eof()) {
            if (cur_.peek() == '@') {
                parse_prefix_directive();
            } else {
                parse_statement();
            }
            cur_.skip_ws_and_comments();
        }
        return std::move(quads_);
    }

private:
    void expect(char c, const char* what) {
        cur_.skip_ws_and_comments();
        if (cur_.eof() || cur_.peek() != c)
            cur_.fail(std::string("expected ") + what);
        cur_.next();
    }

    void parse_prefix_directive() {
        // @prefix name: <iri> .
        std::string word;
        cur_.next(); // '@'
        while (!cur_.eof() && std::isalpha(static_cast<unsigned char>(cur_.peek())))
            word.push_back(cur_.next());
        if (word != "prefix") cur_.fail("unsupported directive '@" + word + "'");
        cur_.skip_ws_and_comments();
        std::string name;
        while (!cur_.eof() && is_prefix_char(cur_.peek())) name.push_back(cur_.next());
        expect(':', "':' after prefix name");
        cur_.skip_ws_and_comments();
        Iri iri = parse_iriref();
        expect('.', "'.' terminating @prefix");
        prefixes_[name] = iri.value;
    }

    Iri parse_iriref() {
        if (cur_.peek() != '<') cur_.fail("expected IRI");
        cur_.next();
        std::string value;
        while (true) {
            if (cur_.eof()) cur_.fail("unterminated IRI");
            char c = cur_.next();
            if (c == '>') break;
            if (c == '\\') {
                value += parse_unicode_escape();
                continue;
            }
            if (c == ' ' || c == '\n' || c == '\t' || c == '<' || c == '"')
                cur_.fail("illegal character in IRI");
            value.push_back(c);
        }
        if (!is_valid_iri(value)) cur_.fail("malformed IRI <" + value + ">");
        return Iri{value};
    }

    std::string parse_unicode_escape() {
        if (cur_.eof()) cur_.fail("dangling escape");
        char kind = cur_.next();
        int width = kind == 'u' ? 4 : kind == 'U' ? 8 : 0;
        if (width == 0) cur_.fail("unsupported escape in IRI");
        std::uint32_t cp = 0;
        for (int i = 0; i < width; ++i) {
            if (cur_.eof()) cur_.fail("truncated unicode escape");
            char c = cur_.next();
            cp <<= 4;
            if (c >= '0' && c <= '9') cp |= static_cast<std::uint32_t>(c - '0');
            else if (c >= 'a' && c <= 'f') cp |= static_cast<std::uint32_t>(c - 'a' + 10);
            else if (c >= 'A' && c <= 'F') cp |= static_cast<std::uint32_t>(c - 'A' + 10);
            else cur_.fail("bad hex digit in unicode escape");
        }
        std::string out;
        append_utf8(out, cp);
        return out;
    }

    Iri resolve_prefixed() {
        std::string prefix;
        while (!cur_.eof() && is_prefix_char(cur_.peek())) prefix.push_back(cur_.next());
        if (cur_.eof() || cur_.peek() != ':') cur_.fail("expected ':' in prefixed name");
        cur_.next();
        std::string local;
        while (!cur_.eof() && is_local_char(cur_.peek())) local.push_back(cur_.next());
        while (!local.empty() && local.back() == '.') {
            local.pop_back();
            put_back_dot_ = true; // final '.' terminates the statement
        }
        auto it = prefixes_.find(prefix);
        if (it == prefixes_.end())
            cur_.fail("undefined prefix '" + prefix + ":'");
        return Iri{it->second + local};
    }

    Literal parse_string_literal() {
        cur_.next(); // opening quote
        if (cur_.peek() == '"' && cur_.peek(1) == '"')
            cur_.fail("long (triple-quoted) strings are not supported");
        std::string lexical;
        while (true) {
            if (cur_.eof()) cur_.fail("unterminated string literal");
            char c = cur_.next();
            if (c == '"') break;
            if (c == '\n') cur_.fail("newline in string literal");
            if (c == '\\') {
                if (cur_.eof()) cur_.fail("dangling escape");
                char e = cur_.next();
                switch (e) {
                case 't': lexical.push_back('\t'); break;
                case 'b': lexical.push_back('\b'); break;
                case 'n': lexical.push_back('\n'); break;
                case 'r': lexical.push_back('\r'); break;
                case 'f': lexical.push_back('\f'); break;
                case '"': lexical.push_back('"'); break;
                case '\'': lexical.push_back('\''); break;
                case '\\': lexical.push_back('\\'); break;
                case 'u':
                case 'U': {
                    std::uint32_t cp = 0;
                    int width = e == 'u' ? 4 : 8;
                    for (int i = 0; i < width; ++i) {
                        if (cur_.eof()) cur_.fail("truncated unicode escape");
                        char h = cur_.next();
                        cp <<= 4;
                        if (h >= '0' && h <= '9') cp |= static_cast<std::uint32_t>(h - '0');
                        else if (h >= 'a' && h <= 'f') cp |= static_cast<std::uint32_t>(h - 'a' + 10);
                        else if (h >= 'A' && h <= 'F') cp |= static_cast<std::uint32_t>(h - 'A' + 10);
                        else cur_.fail("bad hex digit in unicode escape");
                    }
                    append_utf8(lexical, cp);
                    break;
                }
                default: cur_.fail(std::string("unknown escape '\\") + e + "'");
                }
                continue;
            }
            lexical.push_back(c);
        }
        // optional @lang or ^^datatype
        if (!cur_.eof() && cur_.peek() == '@') {
            cur_.next();
            std::string lang;
            while (!cur_.eof() &&
                   (std::isalnum(static_cast<unsigned char>(cur_.peek())) || cur_.peek() == '-'))
                lang.push_back(cur_.next());
            if (lang.empty()) cur_.fail("empty language tag");
            return Literal{lexical, std::nullopt, lang};
        }
        if (!cur_.eof() && cur_.peek() == '^' && cur_.peek(1) == '^') {
            cur_.next();
            cur_.next();
            cur_.skip_ws_and_comments();
            Iri dt = cur_.peek() == '<' ? parse_iriref() : resolve_prefixed();
            return Literal{lexical, dt};
        }
        return Literal{lexical};
    }

    std::optional<Literal> try_parse_number_or_bool() {
        char c = cur_.peek();
        if (c == 't' || c == 'f') {
            // 'true' / 'false' only when followed by a delimiter
            std::string word;
            std::size_t i = 0;
            while (std::isalpha(static_cast<unsigned char>(cur_.peek(i)))) {
                word.push_back(cur_.peek(i));
                ++i;
            }
            if (word == "true" || word == "false") {
                for (std::size_t k = 0; k < word.size(); ++k) cur_.next();
                return Literal{word, xsd::boolean()};
            }
            return std::nullopt;
        }
        if (c != '+' && c != '-' && !std::isdigit(static_cast<unsigned char>(c)))
            return std::nullopt;
        std::string num;
        if (c == '+' || c == '-') num.push_back(cur_.next());
        bool any_digit = false;
        while (!cur_.eof() && std::isdigit(static_cast<unsigned char>(cur_.peek()))) {
            num.push_back(cur_.next());
            any_digit = true;
        }
        bool decimal = false;
        if (!cur_.eof() && cur_.peek() == '.' &&
            std::isdigit(static_cast<unsigned char>(cur_.peek(1)))) {
            decimal = true;
            num.push_back(cur_.next());
            while (!cur_.eof() && std::isdigit(static_cast<unsigned char>(cur_.peek())))
                num.push_back(cur_.next());
        }
        if (!any_digit) cur_.fail("malformed numeric literal");
        return Literal{num, decimal ? xsd::decimal() : xsd::integer()};
    }

    Term parse_subject() {
        char c = cur_.peek();
        if (c == '<') return parse_iriref();
        if (c == '_' && cur_.peek(1) == ':') return parse_blank();
        if (c == '[') cur_.fail("anonymous blank nodes are not supported");
        if (c == '(') cur_.fail("collections are not supported");
        return resolve_prefixed();
    }

    BlankNode parse_blank() {
        cur_.next();
        cur_.next(); // "_:"
        std::string label;
        while (!cur_.eof() && (std::isalnum(static_cast<unsigned char>(cur_.peek())) ||
                               cur_.peek() == '_' || cur_.peek() == '-'))
            label.push_back(cur_.next());
        if (label.empty()) cur_.fail("empty blank node label");
        return BlankNode{label};
    }

    Iri parse_predicate() {
        char c = cur_.peek();
        if (c == '<') return parse_iriref();
        if (c == 'a') {
            // bare 'a' only when followed by whitespace
            char after = cur_.peek(1);
            if (after == ' ' || after == '\t' || after == '\n' || after == '\r' ||
                after == '<' || after == '"') {
                cur_.next();
                return vocab::rdf_type();
            }
        }
        return resolve_prefixed();
    }

    Term parse_object() {
        char c = cur_.peek();
        if (c == '<') return parse_iriref();
        if (c == '"') return parse_string_literal();
        if (c == '_' && cur_.peek(1) == ':') return parse_blank();
        if (c == '[') cur_.fail("anonymous blank nodes are not supported");
        if (c == '(') cur_.fail("collections are not supported");
        if (c == '\'') cur_.fail("single-quoted strings are not supported");
        if (auto lit = try_parse_number_or_bool()) return *lit;
        return resolve_prefixed();
    }

    bool consume_punct(char c) {
        if (put_back_dot_ && c == '.') {
            put_back_dot_ = false;
            return true;
        }
        cur_.skip_ws_and_comments();
        if (!cur_.eof() && cur_.peek() == c) {
            cur_.next();
            return true;
        }
        return false;
    }

    void parse_statement() {
        Term subject = parse_subject();
        while (true) {
            cur_.skip_ws_and_comments();
            if (cur_.eof()) cur_.fail("unexpected end of input in statement");
            Iri predicate = parse_predicate();
            while (true) {
                cur_.skip_ws_and_comments();
                if (cur_.eof()) cur_.fail("unexpected end of input, expected object");
                Term object = parse_object();
                quads_.push_back(Quad{subject, predicate, object, graph_});
                if (!consume_punct(',')) break;
            }
            if (consume_punct(';')) {
                cur_.skip_ws_and_comments();
                // trailing ';' before '.'
                if (!cur_.eof() && cur_.peek() == '.') {
                    cur_.next();
                    return;
                }
                continue;
            }
            break;
        }
        if (!consume_punct('.')) cur_.fail("expected '.' terminating statement");
    }

    Cursor cur_;
    Iri graph_;
    std::map<std::string, std::string> prefixes_;
    std::vector<Quad> quads_;
    bool put_back_dot_ = false;
};

const std::vector<std::pair<std::string, std::string>>& header_prefixes() {
    static const std::vector<std::pair<std::string, std::string>> prefixes = {
        {"rdf", vocab::rdf_ns},
        {"owl", vocab::owl_ns},
        {"skos", vocab::skos_ns},
        {"xsd", xsd::ns},
    };
    return prefixes;
}

bool valid_local_name(std::string_view local) {
    if (local.empty() || local.back() == '.') return false;
    if (std::isdigit(static_cast<unsigned char>(local.front()))) return false;
    return std::all_of(local.begin(), local.end(), is_local_char);
}

std::string compress_iri(const std::string& iri) {
    for (const auto& [name, ns] : header_prefixes()) {
        if (iri.size() > ns.size() && iri.compare(0, ns.size(), ns) == 0) {
            std::string local = iri.substr(ns.size());
            if (valid_local_name(local)) return name + ":" + local;
        }
    }
    return "<" + iri + ">";
}

bool canonical_integer(const std::string& s) {
    std::size_t i = s.size() && (s[0] == '-') ? 1 : 0;
    if (i >= s.size()) return false;
    if (s[i] == '0' && s.size() > i + 1) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

bool canonical_decimal(const std::string& s) {
    std::size_t i = s.size() && (s[0] == '-') ? 1 : 0;
    auto dot = s.find('.', i);
    if (dot == std::string::npos || dot == i || dot + 1 >= s.size()) return false;
    if (s[i] == '0' && dot > i + 1) return false;
    for (std::size_t k = i; k < s.size(); ++k) {
        if (k == dot) continue;
        if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
    }
    return true;
}

std::string render_term(const Term& t) {
    if (auto* i = std::get_if<Iri>(&t)) return compress_iri(i->value);
    if (auto* b = std::get_if<BlankNode>(&t)) return "_:" + b->label;
    const auto& l = std::get<Literal>(t);
    if (!l.language() && l.datatype()) {
        const std::string& dt = l.datatype()->value;
        if (dt == xsd::integer().value && canonical_integer(l.lexical())) return l.lexical();
        if (dt == xsd::decimal().value && canonical_decimal(l.lexical())) return l.lexical();
        if (dt == xsd::boolean().value && (l.lexical() == "true" || l.lexical() == "false"))
            return l.lexical();
    }
    std::string out = term_ntriples(Term{Literal{l.lexical()}});
    if (l.language()) out += "@" + *l.language();
    else if (l.datatype()) out += "^^" + compress_iri(l.datatype()->value);
    return out;
}

} // namespace

std::vector<Quad> parse_turtle(std::string_view text, const Iri& base_graph) {
    return TurtleParser(text, base_graph).parse();
}

std::string serialize_turtle(const std::vector<Quad>& quads) {
    std::string out;
    for (const auto& [name, ns] : header_prefixes())
        out += "@prefix " + name + ": <" + ns + "> .\n";

    if (quads.empty()) return out;

    const std::string& graph = quads.front().graph.value;
    for (const auto& q : quads)
        if (q.graph.value != graph)
            throw Error("serialize_turtle: quads span multiple graphs");

    // subject -> predicate -> sorted object renderings
    std::map<std::string, std::pair<Term, std::map<std::string, std::vector<std::string>>>> grouped;
    for (const auto& q : quads) {
        auto& entry = grouped[term_key(q.subject)];
        entry.first = q.subject;
        entry.second[q.predicate.value].push_back(render_term(q.object));
    }

    for (auto& [skey, entry] : grouped) {
        out += '\n';
        std::string subject_str = render_term(entry.first);
        out += subject_str;
        bool first_pred = true;
        for (auto& [pred, objects] : entry.second) {
            std::sort(objects.begin(), objects.end());
            objects.erase(std::unique(objects.begin(), objects.end()), objects.end());
            if (!first_pred) out += " ;\n   ";
            first_pred = false;
            std::string pred_str =
                pred == vocab::rdf_type().value ? "a" : compress_iri(pred);
            out += " " + pred_str + " ";
            for (std::size_t i = 0; i < objects.size(); ++i) {
                if (i) out += ", ";
                out += objects[i];
            }
        }
        out += " .\n";
    }
    return out;
}

} // namespace dgkit::rdf
