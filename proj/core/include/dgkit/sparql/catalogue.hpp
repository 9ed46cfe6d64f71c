#pragma once

#include <string>
#include <vector>

#include "dgkit/config.hpp"
#include "dgkit/rdf/store.hpp"
#include "dgkit/sparql/query.hpp"

namespace dgkit::sparql {

struct CatalogueEntry {
    rdf::Iri uri;
    std::string name;
    std::string text;
    std::vector<std::string> annotations;
};

// Queries are first-class graph citizens: name, text and FAIR/ontology
// annotations stored as quads in the catalogue graph.
rdf::Iri register_query(rdf::GraphStore& store, const ToolkitConfig& config,
                        const std::string& name, const std::string& text,
                        const std::vector<std::string>& annotations = {});

std::vector<CatalogueEntry> query_catalogue(const rdf::GraphStore& store,
                                            const ToolkitConfig& config);

// Looks up a registered query by name and evaluates it.
SolutionTable run_named_query(const rdf::GraphStore& store, const ToolkitConfig& config,
                              const std::string& name);

// Quads for one catalogue entry, e.g. to serialise a registration to Turtle.
std::vector<rdf::Quad> catalogue_quads(const ToolkitConfig& config, const std::string& name,
                                       const std::string& text,
                                       const std::vector<std::string>& annotations);

} // namespace dgkit::sparql
