#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dgkit::rdf {

struct Iri {
    std::string value;

    auto operator<=>(const Iri&) const = default;
};

// Minimal absolute-IRI well-formedness: nonempty, has a scheme, no whitespace
// or raw angle brackets. Full grammar validation is out of scope here.
bool is_valid_iri(std::string_view s);

struct BlankNode {
    std::string label;

    auto operator<=>(const BlankNode&) const = default;
};

class Literal {
public:
    Literal() = default;
    // xsd:string as an explicit datatype is normalised away: plain and
    // string-typed literals are the same term.
    Literal(std::string lexical, std::optional<Iri> datatype = std::nullopt,
            std::optional<std::string> language = std::nullopt);

    const std::string& lexical() const { return lexical_; }
    const std::optional<Iri>& datatype() const { return datatype_; }
    const std::optional<std::string>& language() const { return language_; }

    auto operator<=>(const Literal&) const = default;

private:
    std::string lexical_;
    std::optional<Iri> datatype_;
    std::optional<std::string> language_;
};

using Term = std::variant<Iri, BlankNode, Literal>;

bool is_iri(const Term& t);
bool is_blank(const Term& t);
bool is_literal(const Term& t);

// Lexical for literals, IRI text for IRIs, "_:label" for blank nodes.
// This is the form FILTER/ORDER BY comparisons and reports operate on.
std::string term_text(const Term& t);

// Unambiguous encoding used for interning, hashing and deterministic sorts.
std::string term_key(const Term& t);

// N-Triples/N-Quads serialisation of a single term.
std::string term_ntriples(const Term& t);

struct Quad {
    Term subject;   // Iri or BlankNode
    Iri predicate;  // never Literal/BlankNode
    Term object;
    Iri graph;

    bool operator==(const Quad&) const = default;
};

// spog order.
bool quad_less(const Quad& a, const Quad& b);
std::string quad_key(const Quad& q);

// Set equality on spog keys, ignoring duplicates and order.
bool quad_set_equal(const std::vector<Quad>& a, const std::vector<Quad>& b);

namespace xsd {
inline const std::string ns = "http://www.w3.org/2001/XMLSchema#";
Iri string_();
Iri integer();
Iri decimal();
Iri boolean();
Iri date();
Iri date_time();
Iri time();
Iri double_();
} // namespace xsd

} // namespace dgkit::rdf
