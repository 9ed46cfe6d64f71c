#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dgkit/rdf/term.hpp"

namespace dgkit::rdf {

// Turtle subset: @prefix, prefixed names, IRIs, string/typed/language
// literals, numeric and boolean abbreviations, ';' and ',' lists,
// '#' comments, blank-node labels. Collections and anonymous blank nodes
// are rejected with a clear error.
std::vector<Quad> parse_turtle(std::string_view text, const Iri& base_graph);

// Deterministic output: subjects, predicates and objects in lexicographic
// order, fixed prefix header. All quads must share one graph.
std::string serialize_turtle(const std::vector<Quad>& quads);

} // namespace dgkit::rdf
