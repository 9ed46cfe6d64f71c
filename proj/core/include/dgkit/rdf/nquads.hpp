#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dgkit/rdf/term.hpp"

namespace dgkit::rdf {

// Line-oriented N-Quads. Lines with three terms (N-Triples) are accepted
// and land in `default_graph`.
std::vector<Quad> parse_nquads(std::string_view text, const Iri& default_graph);

// One line per quad, graph always explicit, quads in spog order.
std::string serialize_nquads(const std::vector<Quad>& quads);

} // namespace dgkit::rdf
