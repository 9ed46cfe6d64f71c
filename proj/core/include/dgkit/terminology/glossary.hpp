#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dgkit/config.hpp"
#include "dgkit/rdf/store.hpp"

namespace dgkit::terminology {

enum class SourceKind { Human, Document, Machine };
std::string to_string(SourceKind kind);
std::optional<SourceKind> source_kind_from(std::string_view s);

struct Definition {
    std::string text;
    SourceKind source_kind = SourceKind::Human;
    std::string source_ref;
};

struct Concept {
    rdf::Iri uri;
    std::string pref_label;
    std::set<std::string> alt_labels;
    // matched against but never reported
    std::set<std::string> hidden_labels;
    std::vector<Definition> definitions;
    std::optional<rdf::Iri> broader;
};

enum class MatchStrength { Exact, Close, Narrow };
std::string to_string(MatchStrength s);
std::optional<MatchStrength> strength_from(std::string_view s);

struct MappingLink {
    rdf::Iri from;
    rdf::Iri to;
    MatchStrength strength = MatchStrength::Exact;
};

struct Suggestion {
    rdf::Iri uri;
    std::string pref_label;
    double score = 0;
};

struct CoverageReport {
    std::size_t mapped = 0; // distinct cross-list pairs connected by any link
    std::vector<rdf::Iri> unmapped_a;
    std::vector<rdf::Iri> unmapped_b;
};

// Quads materialising one concept (labels, definitions with source tags,
// broader link) in `graph`. Shared by the glossary and the enricher so both
// write the same shape of knowledge.
std::vector<rdf::Quad> concept_quads(const ToolkitConfig& config, const rdf::Iri& graph,
                                     const Concept& entry);

// Business glossary over the store: SKOS-style concepts with multi-source
// definitions, reference lists and inter/intra-list mappings.
class Glossary {
public:
    Glossary(rdf::GraphStore& store, const ToolkitConfig& config);
    Glossary(rdf::GraphStore& store, const ToolkitConfig& config, rdf::Iri graph);

    const rdf::Iri& graph() const { return graph_; }

    // Labels replace, definitions append, each tagged with its source.
    rdf::Iri upsert_concept(const Concept& entry);
    std::vector<rdf::Quad> concept_quads(const Concept& entry) const;

    std::vector<Suggestion> suggest_matches(std::string_view new_label, double threshold) const;

    void add_mapping(const MappingLink& link);
    std::vector<rdf::Quad> mapping_quads(const MappingLink& link) const;

    rdf::Iri define_reference_list(const std::string& name, const std::vector<rdf::Iri>& members);
    std::vector<rdf::Iri> list_members(const rdf::Iri& list) const;
    CoverageReport list_coverage(const rdf::Iri& list_a, const rdf::Iri& list_b) const;

    std::string report_csv() const;
    std::string report_turtle() const;

    static std::vector<MappingLink> parse_mapping_csv(std::string_view csv_text);

private:
    void check_concept_uri(const rdf::Iri& uri) const;
    bool known_subject(const rdf::Iri& uri) const;
    rdf::Iri definition_node(const rdf::Iri& subject, const Definition& d) const;

    rdf::GraphStore& store_;
    const ToolkitConfig& config_;
    rdf::Iri graph_;
};

} // namespace dgkit::terminology
