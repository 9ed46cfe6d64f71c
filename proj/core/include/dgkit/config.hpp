#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dgkit/rdf/term.hpp"
#include "dgkit/rdf/vocab.hpp"
#include "dgkit/uri/governed_uri.hpp"

namespace dgkit {

// Runtime configuration: segment registry, graph naming, ontology context
// used to mint enterprise URIs, and the knobs shared across modules.
struct ToolkitConfig {
    uri::SegmentRegistry registry;
    std::vector<std::string> upper_ontology_classes;

    std::string graph_base;    // graphs live at <graph_base>/graphs/<token>
    std::string default_graph; // for three-term N-Quads lines

    // Context every toolkit-minted URI shares.
    std::string release = "r1";
    std::string business_domain = "development";
    std::string business_subdomain = "clinical";
    std::string system_of_record = "globalmetadata";
    std::string timestamp = "v1";

    std::string multi_value_delimiter = "|";
    std::string redaction_token = "[REDACTED]";
    std::size_t max_paths = 1000;
    std::size_t max_depth = 32;

    // FAIR facet annotation predicates (defaults minted under the authority).
    std::string facet_access;
    std::string facet_standard;
    std::string facet_license;
    std::string facet_provenance;

    std::vector<std::string> preload; // files loaded before every command

    static ToolkitConfig builtin_example();
    static ToolkitConfig from_json_file(const std::string& path);

    rdf::vocab::Vocabulary vocab() const;

    // Governed URI under the configured context.
    rdf::Iri mint(const std::string& type_segment,
                  const std::vector<std::string>& entity_path) const;
    rdf::Iri mint(const std::string& type_segment, const std::string& entity) const;

    uri::GovernedUri context_parts() const;
};

} // namespace dgkit
