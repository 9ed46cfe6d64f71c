#pragma once

#include <string>

#include "dgkit/rdf/term.hpp"

namespace dgkit::rdf::vocab {

inline const std::string skos_ns = "http://www.w3.org/2004/02/skos/core#";
inline const std::string rdf_ns = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline const std::string rdfs_ns = "http://www.w3.org/2000/01/rdf-schema#";
inline const std::string owl_ns = "http://www.w3.org/2002/07/owl#";

inline Iri rdf_type() { return Iri{rdf_ns + "type"}; }
inline Iri owl_inverse_of() { return Iri{owl_ns + "inverseOf"}; }

inline Iri skos_pref_label() { return Iri{skos_ns + "prefLabel"}; }
inline Iri skos_alt_label() { return Iri{skos_ns + "altLabel"}; }
inline Iri skos_hidden_label() { return Iri{skos_ns + "hiddenLabel"}; }
inline Iri skos_definition() { return Iri{skos_ns + "definition"}; }
inline Iri skos_broader() { return Iri{skos_ns + "broader"}; }
inline Iri skos_narrower() { return Iri{skos_ns + "narrower"}; }
inline Iri skos_member() { return Iri{skos_ns + "member"}; }
inline Iri skos_exact_match() { return Iri{skos_ns + "exactMatch"}; }
inline Iri skos_close_match() { return Iri{skos_ns + "closeMatch"}; }
inline Iri skos_narrow_match() { return Iri{skos_ns + "narrowMatch"}; }

// Enterprise vocabulary minted under the configured authority so every
// emitted predicate and class IRI follows the governed grammar.
// property_base/class_base look like:
//   <authority>/<release>/<domain>/<subdomain>/<system>/<ts>/property/
struct Vocabulary {
    std::string property_base;
    std::string class_base;

    Iri prop(const std::string& name) const { return Iri{property_base + name}; }
    Iri cls(const std::string& name) const { return Iri{class_base + name}; }

    // lineage
    Iri is_input_of() const { return prop("isInputOf"); }
    Iri has_input() const { return prop("hasInput"); }
    Iri has_output() const { return prop("hasOutput"); }
    Iri is_output_of() const { return prop("isOutputOf"); }
    Iri transformation_rule() const { return prop("transformationRule"); }
    Iri rule_kind() const { return prop("ruleKind"); }
    Iri data_stage() const { return prop("dataStage"); }
    Iri standard() const { return prop("standard"); }
    Iri domain() const { return prop("domain"); }
    Iri variable_name() const { return prop("variableName"); }
    Iri reference_list() const { return prop("referenceList"); }

    // terminology
    Iri definition_text() const { return prop("definitionText"); }
    Iri definition_source_kind() const { return prop("definitionSourceKind"); }
    Iri definition_source_ref() const { return prop("definitionSourceRef"); }

    // governance cascade
    Iri has_issue() const { return prop("hasIssue"); }
    Iri issue_of() const { return prop("issueOf"); }
    Iri has_rule() const { return prop("hasRule"); }
    Iri rule_of() const { return prop("ruleOf"); }
    Iri applies_to() const { return prop("appliesTo"); }
    Iri governed_by() const { return prop("governedBy"); }
    Iri check_kind() const { return prop("checkKind"); }
    Iri noise_scale() const { return prop("noiseScale"); }
    Iri check_seed() const { return prop("checkSeed"); }
    Iri applicability() const { return prop("applicability"); }
    Iri source_document() const { return prop("sourceDocument"); }

    // provenance
    Iri used() const { return prop("used"); }
    Iri used_shape() const { return prop("usedShape"); }
    Iri generated() const { return prop("generated"); }
    Iri transform_digest() const { return prop("transformDigest"); }
    Iri at_time() const { return prop("atTime"); }
    Iri author() const { return prop("author"); }
    Iri source_organisation() const { return prop("sourceOrganisation"); }
    Iri source_reference() const { return prop("sourceReference"); }
    Iri captured_on() const { return prop("capturedOn"); }
    Iri applied_rule() const { return prop("appliedRule"); }
    Iri touched_column() const { return prop("touchedColumn"); }

    // FAIR facets
    Iri access_procedure() const { return prop("accessProcedure"); }
    Iri uses_standard() const { return prop("usesStandard"); }
    Iri license() const { return prop("license"); }
    Iri provenance() const { return prop("provenance"); }

    // query catalogue
    Iri query_text() const { return prop("queryText"); }
    Iri annotation() const { return prop("annotation"); }

    // classes
    Iri variable_class() const { return cls("Variable"); }
    Iri derivation_class() const { return cls("Derivation"); }
    Iri reference_list_class() const { return cls("ReferenceList"); }
    Iri concept_class() const { return cls("Concept"); }
    Iri activity_class() const { return cls("Activity"); }
    Iri dataset_class() const { return cls("Dataset"); }
    Iri query_class() const { return cls("Query"); }
    Iri principle_class() const { return cls("GovernancePrinciple"); }
    Iri issue_class() const { return cls("GovernanceIssue"); }
    Iri governance_rule_class() const { return cls("GovernanceRule"); }
};

} // namespace dgkit::rdf::vocab
