#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dgkit/lineage/model.hpp"
#include "dgkit/sparql/query.hpp"

namespace dgkit::lineage {

struct TechnicalLineage {
    std::vector<Derivation> producing; // derivations with the variable as output
    std::vector<Derivation> consuming; // derivations with the variable as input
};

TechnicalLineage technical_lineage(const UcmModel& model, const rdf::Iri& variable);

// Alternating variable, derivation, variable, ... URIs. A zero-length path
// is the single-element [source] when source == sink.
using LineagePath = std::vector<rdf::Iri>;

// All acyclic source->sink paths, shortest first then lexicographic.
// Enumeration is capped by config max_paths/max_depth.
std::vector<LineagePath> business_lineage(const UcmModel& model, const rdf::Iri& source,
                                          const rdf::Iri& sink);

// Stage/variable/derivation roll-up for conceptual variables whose preferred
// label matches `concept_pattern`; evaluated through the query engine.
sparql::SolutionTable conceptual_rollup(const UcmModel& model,
                                        const std::string& concept_pattern);

// CSV rendering with the lineage table's fixed column headers.
std::string rollup_csv(const sparql::SolutionTable& table);
std::string rollup_text(const sparql::SolutionTable& table);

// First derivation cycle discovered, as an alternating URI path, if any.
std::optional<LineagePath> find_cycle(const UcmModel& model);

} // namespace dgkit::lineage
