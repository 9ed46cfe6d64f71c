#include <algorithm>
#include <cctype>
#include <set>

#include "dgkit/errors.hpp"
#include "dgkit/rdf/vocab.hpp"
#include "dgkit/sparql/query.hpp"

namespace dgkit::sparql {

namespace {

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_local_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

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
    void skip_ws() {
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

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

const std::set<std::string>& unsupported_keywords() {
    static const std::set<std::string> kws = {
        "OPTIONAL", "UNION",  "GRAPH",  "CONSTRUCT", "INSERT", "DELETE", "ASK",
        "DESCRIBE", "LIMIT",  "OFFSET", "GROUP",     "HAVING", "BIND",   "VALUES",
        "MINUS",    "SERVICE"};
    return kws;
}

class QueryParser {
public:
    QueryParser(std::string_view text, std::map<std::string, std::string> prefixes)
        : cur_(text) {
        query_.prefixes = std::move(prefixes);
    }

    Query parse() {
        cur_.skip_ws();
        while (keyword_ahead("PREFIX")) parse_prefix();
        expect_keyword("SELECT");
        cur_.skip_ws();
        if (keyword_ahead("DISTINCT")) {
            consume_word();
            query_.distinct = true;
        }
        parse_select_vars();
        expect_keyword("WHERE");
        cur_.skip_ws();
        if (cur_.peek() != '{') cur_.fail("expected '{' after WHERE");
        cur_.next();
        parse_group();
        cur_.skip_ws();
        if (keyword_ahead("ORDER")) {
            consume_word();
            expect_keyword("BY");
            parse_order_vars();
        }
        cur_.skip_ws();
        if (!cur_.eof()) {
            std::string word = peek_word();
            if (unsupported_keywords().contains(upper(word)))
                cur_.fail("unsupported keyword '" + word + "'");
            cur_.fail("unexpected trailing content");
        }
        validate();
        return std::move(query_);
    }

private:
    static std::string upper(std::string s) {
        std::transform(s.begin(), s.end(), s.begin(),
                       [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
        return s;
    }

    std::string peek_word() const {
        // letters only; used for keyword lookahead
        std::string word;
        std::size_t i = 0;
        while (std::isalpha(static_cast<unsigned char>(cur_.peek(i)))) {
            word.push_back(cur_.peek(i));
            ++i;
        }
        return word;
    }

    bool keyword_ahead(const char* kw) {
        cur_.skip_ws();
        return upper(peek_word()) == kw;
    }

    std::string consume_word() {
        cur_.skip_ws();
        std::string word;
        while (std::isalpha(static_cast<unsigned char>(cur_.peek()))) word.push_back(cur_.next());
        return word;
    }

    void expect_keyword(const char* kw) {
        cur_.skip_ws();
        std::string word = consume_word();
        if (upper(word) != kw) {
            if (unsupported_keywords().contains(upper(word)))
                cur_.fail("unsupported keyword '" + word + "'");
            cur_.fail(std::string("expected ") + kw);
        }
    }

    void parse_prefix() {
        consume_word(); // PREFIX
        cur_.skip_ws();
        std::string name;
        while (is_name_char(cur_.peek()) || cur_.peek() == '-') name.push_back(cur_.next());
        cur_.skip_ws();
        if (cur_.peek() != ':') cur_.fail("expected ':' in PREFIX declaration");
        cur_.next();
        cur_.skip_ws();
        query_.prefixes[name] = parse_iriref().value;
        cur_.skip_ws();
    }

    rdf::Iri parse_iriref() {
        if (cur_.peek() != '<') cur_.fail("expected IRI");
        cur_.next();
        std::string value;
        while (true) {
            if (cur_.eof()) cur_.fail("unterminated IRI");
            char c = cur_.next();
            if (c == '>') break;
            if (c == ' ' || c == '\n' || c == '\t') cur_.fail("illegal character in IRI");
            value.push_back(c);
        }
        if (!rdf::is_valid_iri(value)) cur_.fail("malformed IRI <" + value + ">");
        return rdf::Iri{value};
    }

    std::string parse_var() {
        cur_.skip_ws();
        if (cur_.peek() != '?') cur_.fail("expected variable");
        cur_.next();
        std::string name;
        while (is_name_char(cur_.peek())) name.push_back(cur_.next());
        if (name.empty()) cur_.fail("empty variable name");
        return name;
    }

    void parse_select_vars() {
        cur_.skip_ws();
        if (cur_.peek() == '*') cur_.fail("unsupported keyword '*' (explicit variables only)");
        while (true) {
            cur_.skip_ws();
            if (cur_.peek() != '?') break;
            query_.select_vars.push_back(parse_var());
        }
        if (query_.select_vars.empty()) cur_.fail("SELECT requires at least one variable");
    }

    void parse_order_vars() {
        while (true) {
            cur_.skip_ws();
            if (cur_.peek() != '?') break;
            query_.order_by.push_back(parse_var());
        }
        if (query_.order_by.empty()) cur_.fail("ORDER BY requires at least one variable");
    }

    rdf::Iri resolve_prefixed() {
        std::string prefix;
        while (is_name_char(cur_.peek()) || cur_.peek() == '-') prefix.push_back(cur_.next());
        if (cur_.peek() != ':') cur_.fail("expected ':' in prefixed name");
        cur_.next();
        std::string local;
        while (is_local_char(cur_.peek())) local.push_back(cur_.next());
        while (!local.empty() && local.back() == '.') {
            local.pop_back();
            pending_dot_ = true;
        }
        auto it = query_.prefixes.find(prefix);
        if (it == query_.prefixes.end())
            cur_.fail("unknown prefix '" + prefix + ":'");
        return rdf::Iri{it->second + local};
    }

    rdf::Literal parse_string() {
        cur_.next(); // opening quote
        std::string lexical;
        while (true) {
            if (cur_.eof()) cur_.fail("unterminated string");
            char c = cur_.next();
            if (c == '"') break;
            if (c == '\\') {
                if (cur_.eof()) cur_.fail("dangling escape");
                char e = cur_.next();
                switch (e) {
                case 'n': lexical.push_back('\n'); break;
                case 't': lexical.push_back('\t'); break;
                case 'r': lexical.push_back('\r'); break;
                case '"': lexical.push_back('"'); break;
                case '\\': lexical.push_back('\\'); break;
                default: cur_.fail(std::string("unknown escape '\\") + e + "'");
                }
                continue;
            }
            lexical.push_back(c);
        }
        return rdf::Literal{lexical};
    }

    PatternTerm parse_term(bool allow_literal) {
        cur_.skip_ws();
        char c = cur_.peek();
        if (c == '?') return Variable{parse_var()};
        if (c == '<') return parse_iriref();
        if (c == '"') {
            if (!allow_literal) cur_.fail("literal not allowed in this position");
            return parse_string();
        }
        if (c == '+' || c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
            if (!allow_literal) cur_.fail("literal not allowed in this position");
            std::string num;
            if (c == '+' || c == '-') num.push_back(cur_.next());
            bool decimal = false;
            while (std::isdigit(static_cast<unsigned char>(cur_.peek()))) num.push_back(cur_.next());
            if (cur_.peek() == '.' && std::isdigit(static_cast<unsigned char>(cur_.peek(1)))) {
                decimal = true;
                num.push_back(cur_.next());
                while (std::isdigit(static_cast<unsigned char>(cur_.peek())))
                    num.push_back(cur_.next());
            }
            return rdf::Literal{num, decimal ? rdf::xsd::decimal() : rdf::xsd::integer()};
        }
        if (c == 'a') {
            char after = cur_.peek(1);
            if (after == ' ' || after == '\t' || after == '\n' || after == '\r') {
                cur_.next();
                return rdf::vocab::rdf_type();
            }
        }
        std::string word = peek_word();
        if (unsupported_keywords().contains(upper(word)))
            cur_.fail("unsupported keyword '" + word + "'");
        return resolve_prefixed();
    }

    void parse_filter() {
        consume_word(); // FILTER
        cur_.skip_ws();
        if (cur_.peek() != '(') cur_.fail("expected '(' after FILTER");
        cur_.next();
        std::string fn = consume_word();
        if (upper(fn) != "REGEX") cur_.fail("only FILTER(REGEX(...)) is supported");
        cur_.skip_ws();
        if (cur_.peek() != '(') cur_.fail("expected '(' after REGEX");
        cur_.next();
        std::string var = parse_var();
        cur_.skip_ws();
        if (cur_.peek() != ',') cur_.fail("expected ',' in REGEX");
        cur_.next();
        cur_.skip_ws();
        if (cur_.peek() != '"') cur_.fail("expected pattern string in REGEX");
        rdf::Literal pattern = parse_string();
        cur_.skip_ws();
        if (cur_.peek() != ')') cur_.fail("expected ')' closing REGEX");
        cur_.next();
        cur_.skip_ws();
        if (cur_.peek() != ')') cur_.fail("expected ')' closing FILTER");
        cur_.next();
        query_.filters.push_back(RegexFilter{var, pattern.lexical()});
    }

    bool consume_punct(char c) {
        if (pending_dot_ && c == '.') {
            pending_dot_ = false;
            return true;
        }
        cur_.skip_ws();
        if (!cur_.eof() && cur_.peek() == c) {
            cur_.next();
            return true;
        }
        return false;
    }

    void parse_group() {
        while (true) {
            cur_.skip_ws();
            if (cur_.eof()) cur_.fail("unterminated WHERE group");
            if (cur_.peek() == '}') {
                cur_.next();
                return;
            }
            if (keyword_ahead("FILTER")) {
                parse_filter();
                consume_punct('.');
                continue;
            }
            std::string word = peek_word();
            if (unsupported_keywords().contains(upper(word)))
                cur_.fail("unsupported keyword '" + word + "'");

            PatternTerm subject = parse_term(false);
            while (true) {
                PatternTerm predicate = parse_term(false);
                if (std::holds_alternative<rdf::Literal>(predicate))
                    cur_.fail("predicate cannot be a literal");
                PatternTerm object = parse_term(true);
                query_.patterns.push_back(TriplePattern{subject, predicate, object});
                if (consume_punct(';')) {
                    cur_.skip_ws();
                    if (cur_.peek() == '.' || cur_.peek() == '}') break;
                    continue;
                }
                break;
            }
            consume_punct('.');
        }
    }

    void validate() {
        std::set<std::string> bound;
        for (const auto& p : query_.patterns) {
            for (const auto* t : {&p.subject, &p.predicate, &p.object})
                if (auto* v = std::get_if<Variable>(t)) bound.insert(v->name);
        }
        std::set<std::string> filter_vars;
        for (const auto& f : query_.filters) filter_vars.insert(f.variable);

        for (const auto& v : query_.select_vars)
            if (!bound.contains(v) && !filter_vars.contains(v))
                throw Error("select variable ?" + v + " does not appear in WHERE");
        for (const auto& v : query_.order_by)
            if (!bound.contains(v) && !filter_vars.contains(v))
                throw Error("order variable ?" + v + " does not appear in WHERE");
    }

    Cursor cur_;
    Query query_;
    bool pending_dot_ = false;
};

} // namespace

std::map<std::string, std::string> well_known_prefixes() {
    return {
        {"rdf", rdf::vocab::rdf_ns},
        {"rdfs", rdf::vocab::rdfs_ns},
        {"owl", rdf::vocab::owl_ns},
        {"skos", rdf::vocab::skos_ns},
        {"xsd", rdf::xsd::ns},
    };
}

Query parse_query(std::string_view text, const std::map<std::string, std::string>& base_prefixes) {
    return QueryParser(text, base_prefixes).parse();
}

} // namespace dgkit::sparql
