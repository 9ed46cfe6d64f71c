#pragma once

#include <string>
#include <vector>

#include "dgkit/config.hpp"
#include "dgkit/terminology/glossary.hpp"

namespace dgkit::enricher {

// Captured knowledge template: a config tab (authorship/origin), a unique
// concepts tab and an additional properties tab. Accepted either as a
// directory bundle (config.csv, unique_concepts.csv, additional_properties.csv)
// or as one file with "#tab <name>" section markers.
struct EnricherDocument {
    std::string author;
    std::string source_organisation;
    std::string source_reference;
    std::string capture_date;
    terminology::SourceKind definition_source = terminology::SourceKind::Human;

    struct ConceptRow {
        std::size_t row = 0; // 1-based within the concepts tab
        std::string uri, pref_label, alt_labels, definition, class_tag;
    };
    struct PropertyRow {
        std::size_t row = 0;
        std::string subject, predicate, object, object_kind; // object_kind: iri|literal|""
    };
    std::vector<ConceptRow> concepts;
    std::vector<PropertyRow> properties;
};

enum class QcCheck {
    UriValidity,
    UriUniqueness,
    LabelLocalUniqueness,
    DefinitionPresence,
    StructureConformance,
};
std::string to_string(QcCheck check);

struct QcFinding {
    std::string tab;
    std::size_t row = 0;
    QcCheck check = QcCheck::StructureConformance;
    std::string message;
};

struct QcReport {
    std::vector<QcFinding> findings;
    bool ok() const { return findings.empty(); }
};

std::string qc_report_csv(const QcReport& report);
std::string qc_report_text(const QcReport& report);

struct IngestResult {
    QcReport qc;
    std::string turtle; // empty unless QC passed
    std::vector<terminology::Concept> concepts;
};

EnricherDocument read_document(const std::string& path);
QcReport quality_check(const EnricherDocument& doc, const ToolkitConfig& config);

// QC first; Turtle (concepts + properties + capture provenance) only on pass.
IngestResult ingest(const std::string& path, const ToolkitConfig& config);

} // namespace dgkit::enricher
