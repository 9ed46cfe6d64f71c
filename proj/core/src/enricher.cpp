#include "dgkit/enricher.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "dgkit/csv.hpp"
#include "dgkit/dates.hpp"
#include "dgkit/errors.hpp"
#include "dgkit/rdf/turtle.hpp"
#include "dgkit/rdf/vocab.hpp"
#include "dgkit/text.hpp"

namespace dgkit::enricher {

namespace fs = std::filesystem;
using rdf::Iri;
using rdf::Literal;
using rdf::Quad;
namespace vocab = rdf::vocab;

std::string to_string(QcCheck check) {
    switch (check) {
    case QcCheck::UriValidity: return "uri-validity";
    case QcCheck::UriUniqueness: return "uri-uniqueness";
    case QcCheck::LabelLocalUniqueness: return "label-local-uniqueness";
    case QcCheck::DefinitionPresence: return "definition-presence";
    case QcCheck::StructureConformance: return "structure-conformance";
    }
    return "structure-conformance";
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open enricher file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Sections {
    std::string config, concepts, properties;
};

Sections read_sections(const std::string& path) {
    Sections sections;
    if (fs::is_directory(path)) {
        auto want = [&](const char* name) {
            fs::path p = fs::path(path) / name;
            if (!fs::exists(p))
                throw Error("enricher bundle is missing section file: " + p.string());
            return read_file(p.string());
        };
        sections.config = want("config.csv");
        sections.concepts = want("unique_concepts.csv");
        sections.properties = want("additional_properties.csv");
        return sections;
    }

    std::string content = read_file(path);
    std::string* current = nullptr;
    std::istringstream lines(content);
    std::string line;
    while (std::getline(lines, line)) {
        std::string trimmed = text::trim(line);
        std::string lowered = text::to_lower(trimmed);
        if (text::starts_with(lowered, "#tab")) {
            if (lowered.find("config") != std::string::npos) current = &sections.config;
            else if (lowered.find("concept") != std::string::npos) current = &sections.concepts;
            else if (lowered.find("propert") != std::string::npos) current = &sections.properties;
            else throw Error("unknown enricher section marker: " + trimmed);
            continue;
        }
        if (current) {
            *current += line;
            *current += '\n';
        }
    }
    if (sections.config.empty()) throw Error("enricher document is missing the config section");
    if (sections.concepts.empty())
        throw Error("enricher document is missing the unique concepts section");
    if (sections.properties.empty())
        throw Error("enricher document is missing the additional properties section");
    return sections;
}

std::size_t column_of(const csv::Row& header, std::string_view name) {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (text::to_lower(header[i]) == name) return i;
    return header.size();
}

std::string cell(const csv::Row& row, std::size_t idx) {
    return idx < row.size() ? text::trim(row[idx]) : "";
}

} // namespace

EnricherDocument read_document(const std::string& path) {
    Sections sections = read_sections(path);
    EnricherDocument doc;

    for (const auto& row : csv::parse(sections.config)) {
        if (row.size() < 2) continue;
        std::string key = text::to_lower(text::trim(row[0]));
        std::string value = text::trim(row[1]);
        if (key == "author") doc.author = value;
        else if (key == "source_organisation") doc.source_organisation = value;
        else if (key == "source_reference") doc.source_reference = value;
        else if (key == "capture_date") doc.capture_date = value;
        else if (key == "definition_source_kind") {
            if (auto kind = terminology::source_kind_from(value)) doc.definition_source = *kind;
        }
    }

    auto concept_rows = csv::parse(sections.concepts);
    if (concept_rows.empty()) throw Error("unique concepts section is empty");
    const auto& cheader = concept_rows.front();
    std::size_t c_uri = column_of(cheader, "uri");
    std::size_t c_pref = column_of(cheader, "pref_label");
    std::size_t c_alt = column_of(cheader, "alt_labels");
    std::size_t c_def = column_of(cheader, "definition");
    std::size_t c_class = column_of(cheader, "class_tag");
    if (c_uri == cheader.size() || c_pref == cheader.size() || c_def == cheader.size() ||
        c_class == cheader.size())
        throw Error("unique concepts section needs uri, pref_label, definition, class_tag columns");
    for (std::size_t r = 1; r < concept_rows.size(); ++r) {
        const auto& row = concept_rows[r];
        if (std::all_of(row.begin(), row.end(), [](const std::string& s) { return s.empty(); }))
            continue;
        doc.concepts.push_back({r, cell(row, c_uri), cell(row, c_pref), cell(row, c_alt),
                                cell(row, c_def), cell(row, c_class)});
    }

    auto property_rows = csv::parse(sections.properties);
    if (property_rows.empty()) throw Error("additional properties section is empty");
    const auto& pheader = property_rows.front();
    std::size_t p_subj = column_of(pheader, "subject");
    std::size_t p_pred = column_of(pheader, "predicate");
    std::size_t p_obj = column_of(pheader, "object");
    std::size_t p_kind = column_of(pheader, "object_kind");
    if (p_subj == pheader.size() || p_pred == pheader.size() || p_obj == pheader.size())
        throw Error("additional properties section needs subject, predicate, object columns");
    for (std::size_t r = 1; r < property_rows.size(); ++r) {
        const auto& row = property_rows[r];
        if (std::all_of(row.begin(), row.end(), [](const std::string& s) { return s.empty(); }))
            continue;
        doc.properties.push_back({r, cell(row, p_subj), cell(row, p_pred), cell(row, p_obj),
                                  p_kind < pheader.size() ? cell(row, p_kind) : ""});
    }
    return doc;
}

QcReport quality_check(const EnricherDocument& doc, const ToolkitConfig& config) {
    QcReport report;
    auto add = [&](const char* tab, std::size_t row, QcCheck check, std::string message) {
        report.findings.push_back(QcFinding{tab, row, check, std::move(message)});
    };

    std::set<std::string> uris, labels;
    for (const auto& c : doc.concepts) {
        if (c.uri.empty() || !rdf::is_valid_iri(c.uri)) {
            add("unique concepts", c.row, QcCheck::UriValidity,
                "malformed URI '" + c.uri + "'");
        } else if (text::starts_with(c.uri, config.registry.authority + "/")) {
            auto outcome = uri::validate_uri(Iri{c.uri}, config.registry);
            if (!outcome.ok())
                add("unique concepts", c.row, QcCheck::UriValidity,
                    c.uri + ": " + outcome.violations.front());
        }
        if (!c.uri.empty() && !uris.insert(c.uri).second)
            add("unique concepts", c.row, QcCheck::UriUniqueness,
                "URI '" + c.uri + "' appears more than once");
        if (c.pref_label.empty())
            add("unique concepts", c.row, QcCheck::StructureConformance,
                "missing preferred label");
        else if (!labels.insert(c.pref_label).second)
            add("unique concepts", c.row, QcCheck::LabelLocalUniqueness,
                "preferred label '" + c.pref_label + "' appears more than once");
        if (c.definition.empty())
            add("unique concepts", c.row, QcCheck::DefinitionPresence,
                "concept has no definition");
        if (c.class_tag.empty() ||
            std::find(config.upper_ontology_classes.begin(), config.upper_ontology_classes.end(),
                      c.class_tag) == config.upper_ontology_classes.end())
            add("unique concepts", c.row, QcCheck::StructureConformance,
                "class tag '" + c.class_tag + "' is not in the upper-ontology class list");
    }

    for (const auto& p : doc.properties) {
        bool subject_in_file = uris.contains(p.subject);
        if (!subject_in_file && !rdf::is_valid_iri(p.subject))
            add("additional properties", p.row, QcCheck::UriValidity,
                "subject '" + p.subject + "' is neither a captured concept nor a valid IRI");
        bool predicate_token = uri::is_token(p.predicate);
        if (!predicate_token && !rdf::is_valid_iri(p.predicate))
            add("additional properties", p.row, QcCheck::UriValidity,
                "predicate '" + p.predicate + "' is neither a property token nor a valid IRI");
        if (p.object.empty())
            add("additional properties", p.row, QcCheck::StructureConformance, "empty object");
        if (p.object_kind == "iri" && !rdf::is_valid_iri(p.object))
            add("additional properties", p.row, QcCheck::UriValidity,
                "object '" + p.object + "' declared as IRI but malformed");
    }
    return report;
}

IngestResult ingest(const std::string& path, const ToolkitConfig& config) {
    EnricherDocument doc = read_document(path);
    IngestResult result;
    result.qc = quality_check(doc, config);
    if (!result.qc.ok()) return result; // QC gate: nothing is emitted

    Iri graph{config.graph_base + "/graphs/glossary"};
    auto v = config.vocab();
    std::vector<Quad> quads;

    for (const auto& row : doc.concepts) {
        terminology::Concept entry;
        entry.uri = Iri{row.uri};
        entry.pref_label = row.pref_label;
        for (const auto& alt : text::split(row.alt_labels, '|')) {
            std::string trimmed = text::trim(alt);
            if (!trimmed.empty()) entry.alt_labels.insert(trimmed);
        }
        std::string source_ref = doc.source_organisation;
        if (!doc.source_reference.empty())
            source_ref += (source_ref.empty() ? "" : ", ") + doc.source_reference;
        entry.definitions.push_back(
            terminology::Definition{row.definition, doc.definition_source, source_ref});
        auto concept_quads = terminology::concept_quads(config, graph, entry);
        quads.insert(quads.end(), concept_quads.begin(), concept_quads.end());
        quads.push_back({entry.uri, vocab::rdf_type(), v.cls(row.class_tag), graph});
        result.concepts.push_back(std::move(entry));
    }

    for (const auto& p : doc.properties) {
        Iri predicate = rdf::is_valid_iri(p.predicate) ? Iri{p.predicate} : v.prop(p.predicate);
        rdf::Term object;
        bool object_is_iri =
            p.object_kind == "iri" || (p.object_kind.empty() && rdf::is_valid_iri(p.object) &&
                                       p.object.find("://") != std::string::npos);
        if (object_is_iri) object = Iri{p.object};
        else object = Literal{p.object};
        quads.push_back({Iri{p.subject}, predicate, object, graph});
    }

    // capture provenance from the config tab
    std::string digest = text::hex(
        text::fnv1a(doc.author + "\x1f" + doc.source_organisation + "\x1f" +
                    doc.source_reference + "\x1f" + doc.capture_date + "\x1f" + path));
    Iri activity = config.mint("activity", "enricher-" + digest);
    quads.push_back({activity, vocab::rdf_type(), v.activity_class(), graph});
    if (!doc.author.empty())
        quads.push_back({activity, v.author(), Literal{doc.author}, graph});
    if (!doc.source_organisation.empty())
        quads.push_back({activity, v.source_organisation(), Literal{doc.source_organisation},
                         graph});
    if (!doc.source_reference.empty())
        quads.push_back({activity, v.source_reference(), Literal{doc.source_reference}, graph});
    if (!doc.capture_date.empty()) {
        rdf::Literal stamp = dates::parse_iso_date(doc.capture_date)
                                 ? Literal{doc.capture_date, rdf::xsd::date()}
                                 : Literal{doc.capture_date};
        quads.push_back({activity, v.captured_on(), stamp, graph});
    }
    for (const auto& c : result.concepts)
        quads.push_back({activity, v.generated(), c.uri, graph});

    result.turtle = rdf::serialize_turtle(quads);
    return result;
}

std::string qc_report_csv(const QcReport& report) {
    std::vector<csv::Row> rows;
    rows.push_back({"tab", "row", "check", "message"});
    for (const auto& f : report.findings)
        rows.push_back({f.tab, std::to_string(f.row), to_string(f.check), f.message});
    return csv::write(rows);
}

std::string qc_report_text(const QcReport& report) {
    if (report.ok()) return "enricher QC: OK\n";
    std::string out = "enricher QC: " + std::to_string(report.findings.size()) + " finding(s)\n";
    for (const auto& f : report.findings)
        out += "  [" + to_string(f.check) + "] " + f.tab + " row " + std::to_string(f.row) +
               ": " + f.message + "\n";
    return out;
}

} // namespace dgkit::enricher
