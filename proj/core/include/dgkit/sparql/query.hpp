#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dgkit/rdf/store.hpp"
#include "dgkit/rdf/term.hpp"

namespace dgkit::sparql {

struct Variable {
    std::string name;
    bool operator==(const Variable&) const = default;
};

using PatternTerm = std::variant<Variable, rdf::Iri, rdf::Literal>;

struct TriplePattern {
    PatternTerm subject;
    PatternTerm predicate; // never a Literal
    PatternTerm object;
};

struct RegexFilter {
    std::string variable;
    std::string pattern; // unanchored, case-sensitive
};

// SELECT [DISTINCT] ?v... WHERE { patterns, FILTER(REGEX(?v,"p")) } ORDER BY ?v...
struct Query {
    std::map<std::string, std::string> prefixes;
    std::vector<std::string> select_vars;
    bool distinct = false;
    std::vector<TriplePattern> patterns;
    std::vector<RegexFilter> filters;
    std::vector<std::string> order_by;
};

// Prefixes available without declaration (rdf, rdfs, owl, skos, xsd).
std::map<std::string, std::string> well_known_prefixes();

// `base_prefixes` seeds the prefix table (the configured default ':'
// namespace goes in under the empty string); PREFIX declarations override.
Query parse_query(std::string_view text,
                  const std::map<std::string, std::string>& base_prefixes =
                      well_known_prefixes());

struct SolutionTable {
    std::vector<std::string> vars;
    // Row cells align with `vars`; a missing binding stays disengaged.
    std::vector<std::vector<std::optional<rdf::Term>>> rows;
};

// Bag-semantics join over the union of all graphs; filters run as soon as
// their variable binds; DISTINCT collapses identical projections; ORDER BY
// compares numerically when both sides are numeric literals.
SolutionTable evaluate(const Query& query, const rdf::GraphStore& store);

std::string to_sparql_json(const SolutionTable& table);
std::string to_csv(const SolutionTable& table);
std::string to_text(const SolutionTable& table);

} // namespace dgkit::sparql
