#include "dgkit/terminology/glossary.hpp"

#include <algorithm>
#include <map>

#include "dgkit/csv.hpp"
#include "dgkit/errors.hpp"
#include "dgkit/rdf/turtle.hpp"
#include "dgkit/rdf/vocab.hpp"
#include "dgkit/text.hpp"

namespace dgkit::terminology {

using rdf::Iri;
using rdf::Literal;
using rdf::Quad;
using rdf::Term;
namespace vocab = rdf::vocab;

std::string to_string(SourceKind kind) {
    switch (kind) {
    case SourceKind::Human: return "human";
    case SourceKind::Document: return "document";
    case SourceKind::Machine: return "machine";
    }
    return "human";
}

std::optional<SourceKind> source_kind_from(std::string_view s) {
    std::string folded = text::to_lower(std::string(s));
    if (folded == "human") return SourceKind::Human;
    if (folded == "document") return SourceKind::Document;
    if (folded == "machine" || folded == "machine/data" || folded == "data")
        return SourceKind::Machine;
    return std::nullopt;
}

std::string to_string(MatchStrength s) {
    switch (s) {
    case MatchStrength::Exact: return "exact";
    case MatchStrength::Close: return "close";
    case MatchStrength::Narrow: return "narrow";
    }
    return "exact";
}

std::optional<MatchStrength> strength_from(std::string_view s) {
    std::string folded = text::to_lower(std::string(s));
    if (folded == "exact" || folded == "exactmatch") return MatchStrength::Exact;
    if (folded == "close" || folded == "closematch") return MatchStrength::Close;
    if (folded == "narrow" || folded == "narrowmatch") return MatchStrength::Narrow;
    return std::nullopt;
}

namespace {
Iri strength_predicate(MatchStrength s) {
    switch (s) {
    case MatchStrength::Exact: return vocab::skos_exact_match();
    case MatchStrength::Close: return vocab::skos_close_match();
    case MatchStrength::Narrow: return vocab::skos_narrow_match();
    }
    return vocab::skos_exact_match();
}
} // namespace

Glossary::Glossary(rdf::GraphStore& store, const ToolkitConfig& config)
    : Glossary(store, config, Iri{config.graph_base + "/graphs/glossary"}) {}

Glossary::Glossary(rdf::GraphStore& store, const ToolkitConfig& config, Iri graph)
    : store_(store), config_(config), graph_(std::move(graph)) {}

void Glossary::check_concept_uri(const Iri& uri) const {
    if (!rdf::is_valid_iri(uri.value)) throw Error("invalid concept IRI: " + uri.value);
    if (text::starts_with(uri.value, config_.registry.authority + "/")) {
        auto outcome = uri::validate_uri(uri, config_.registry);
        if (!outcome.ok())
            throw Error("concept IRI fails governance: " + uri.value + " (" +
                        outcome.violations.front() + ")");
    }
}

bool Glossary::known_subject(const Iri& uri) const {
    return !store_.match(Term{uri}, std::nullopt, std::nullopt, std::nullopt).empty();
}

namespace {
Iri definition_node_for(const ToolkitConfig& config, const Iri& subject, const Definition& d) {
    std::string digest =
        text::hex(text::fnv1a(subject.value + "\x1f" + d.text + "\x1f" + to_string(d.source_kind) +
                              "\x1f" + d.source_ref));
    return config.mint("definition", "def-" + digest);
}
} // namespace

std::vector<Quad> concept_quads(const ToolkitConfig& config, const Iri& graph,
                                const Concept& entry) {
    auto v = config.vocab();
    std::vector<Quad> quads;
    quads.push_back({entry.uri, vocab::rdf_type(), v.concept_class(), graph});
    quads.push_back({entry.uri, vocab::skos_pref_label(), Literal{entry.pref_label}, graph});
    for (const auto& alt : entry.alt_labels) {
        if (alt.empty() || alt == entry.pref_label) continue;
        quads.push_back({entry.uri, vocab::skos_alt_label(), Literal{alt}, graph});
    }
    for (const auto& hidden : entry.hidden_labels) {
        if (hidden.empty() || hidden == entry.pref_label) continue;
        quads.push_back({entry.uri, vocab::skos_hidden_label(), Literal{hidden}, graph});
    }
    for (const auto& d : entry.definitions) {
        Iri node = definition_node_for(config, entry.uri, d);
        quads.push_back({entry.uri, vocab::skos_definition(), node, graph});
        quads.push_back({node, v.definition_text(), Literal{d.text}, graph});
        quads.push_back({node, v.definition_source_kind(), Literal{to_string(d.source_kind)}, graph});
        if (!d.source_ref.empty())
            quads.push_back({node, v.definition_source_ref(), Literal{d.source_ref}, graph});
    }
    if (entry.broader)
        quads.push_back({entry.uri, vocab::skos_broader(), *entry.broader, graph});
    return quads;
}

Iri Glossary::definition_node(const Iri& subject, const Definition& d) const {
    return definition_node_for(config_, subject, d);
}

std::vector<Quad> Glossary::concept_quads(const Concept& entry) const {
    return terminology::concept_quads(config_, graph_, entry);
}

Iri Glossary::upsert_concept(const Concept& entry) {
    if (entry.pref_label.empty()) throw Error("concept pref_label must be nonempty");
    check_concept_uri(entry.uri);
    for (const auto& d : entry.definitions)
        if (d.text.empty()) throw Error("definition text must be nonempty");
    if (entry.broader && !known_subject(*entry.broader))
        throw Error("broader concept not in store: " + entry.broader->value);

    // labels replace; so does broader when provided
    for (const auto& p :
         {vocab::skos_pref_label(), vocab::skos_alt_label(), vocab::skos_hidden_label()})
        for (const auto& q : store_.match(Term{entry.uri}, p, std::nullopt, graph_))
            store_.erase(q);
    if (entry.broader)
        for (const auto& q :
             store_.match(Term{entry.uri}, vocab::skos_broader(), std::nullopt, graph_))
            store_.erase(q);

    for (const auto& q : concept_quads(entry)) store_.insert(q);
    return entry.uri;
}

std::vector<Suggestion> Glossary::suggest_matches(std::string_view new_label,
                                                  double threshold) const {
    if (threshold < 0.0 || threshold > 1.0) throw Error("threshold must be in [0,1]");
    std::vector<Suggestion> out;
    for (const auto& subject : store_.subjects(vocab::skos_pref_label())) {
        auto* uri = std::get_if<Iri>(&subject);
        if (!uri) continue;
        double best = -1.0;
        std::string pref;
        for (const auto& p :
             {vocab::skos_pref_label(), vocab::skos_alt_label(), vocab::skos_hidden_label()}) {
            for (const auto& label : store_.objects(subject, p)) {
                auto* lit = std::get_if<Literal>(&label);
                if (!lit) continue;
                if (p.value == vocab::skos_pref_label().value && pref.empty())
                    pref = lit->lexical();
                best = std::max(best, text::label_similarity(new_label, lit->lexical()));
            }
        }
        if (best >= threshold) out.push_back(Suggestion{*uri, pref, best});
    }
    std::sort(out.begin(), out.end(), [](const Suggestion& a, const Suggestion& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.uri.value < b.uri.value;
    });
    return out;
}

std::vector<Quad> Glossary::mapping_quads(const MappingLink& link) const {
    Iri pred = strength_predicate(link.strength);
    std::vector<Quad> quads;
    quads.push_back({link.from, pred, link.to, graph_});
    if (link.strength == MatchStrength::Exact)
        quads.push_back({link.to, pred, link.from, graph_});
    return quads;
}

void Glossary::add_mapping(const MappingLink& link) {
    if (!known_subject(link.from)) throw Error("unknown mapping endpoint: " + link.from.value);
    if (!known_subject(link.to)) throw Error("unknown mapping endpoint: " + link.to.value);
    for (const auto& q : mapping_quads(link)) store_.insert(q);
}

rdf::Iri Glossary::define_reference_list(const std::string& name,
                                         const std::vector<Iri>& members) {
    std::string token;
    for (char c : name) token.push_back(uri::is_token(std::string_view(&c, 1)) ? c : '_');
    Iri list = config_.mint("referencelist", token);
    auto v = config_.vocab();
    store_.insert({list, vocab::rdf_type(), v.reference_list_class(), graph_});
    store_.insert({list, vocab::skos_pref_label(), Literal{name}, graph_});
    std::set<std::string> seen;
    for (const auto& m : members) {
        if (!seen.insert(m.value).second) throw Error("duplicate list member: " + m.value);
        if (!known_subject(m)) throw Error("list member not in store: " + m.value);
        store_.insert({list, vocab::skos_member(), m, graph_});
    }
    return list;
}

std::vector<Iri> Glossary::list_members(const Iri& list) const {
    std::vector<Iri> out;
    for (const auto& m : store_.objects(Term{list}, vocab::skos_member()))
        if (auto* iri = std::get_if<Iri>(&m)) out.push_back(*iri);
    std::sort(out.begin(), out.end());
    return out;
}

CoverageReport Glossary::list_coverage(const Iri& list_a, const Iri& list_b) const {
    auto members_a = list_members(list_a);
    auto members_b = list_members(list_b);
    if (members_a.empty() && !known_subject(list_a))
        throw Error("unknown reference list: " + list_a.value);
    if (members_b.empty() && !known_subject(list_b))
        throw Error("unknown reference list: " + list_b.value);

    std::set<std::string> set_b;
    for (const auto& m : members_b) set_b.insert(m.value);

    const std::vector<Iri> preds = {vocab::skos_exact_match(), vocab::skos_close_match(),
                                    vocab::skos_narrow_match()};
    std::set<std::pair<std::string, std::string>> pairs;
    std::set<std::string> covered_a, covered_b;
    for (const auto& a : members_a) {
        for (const auto& p : preds) {
            for (const auto& q : store_.match(Term{a}, p, std::nullopt, std::nullopt)) {
                auto* to = std::get_if<Iri>(&q.object);
                if (to && set_b.contains(to->value)) {
                    pairs.insert({std::min(a.value, to->value), std::max(a.value, to->value)});
                    covered_a.insert(a.value);
                    covered_b.insert(to->value);
                }
            }
            for (const auto& q : store_.match(std::nullopt, p, Term{a}, std::nullopt)) {
                auto* from = std::get_if<Iri>(&q.subject);
                if (from && set_b.contains(from->value)) {
                    pairs.insert({std::min(a.value, from->value), std::max(a.value, from->value)});
                    covered_a.insert(a.value);
                    covered_b.insert(from->value);
                }
            }
        }
    }

    CoverageReport report;
    report.mapped = pairs.size();
    for (const auto& a : members_a)
        if (!covered_a.contains(a.value)) report.unmapped_a.push_back(a);
    for (const auto& b : members_b)
        if (!covered_b.contains(b.value)) report.unmapped_b.push_back(b);
    return report;
}

std::string Glossary::report_csv() const {
    auto v = config_.vocab();
    std::vector<csv::Row> rows;
    rows.push_back({"uri", "pref_label", "alt_labels", "definitions"});
    for (const auto& subject : store_.subjects(vocab::skos_pref_label())) {
        csv::Row row;
        row.push_back(rdf::term_text(subject));
        auto pref = store_.first_object(subject, vocab::skos_pref_label());
        row.push_back(pref ? rdf::term_text(*pref) : "");

        std::vector<std::string> alts;
        for (const auto& alt : store_.objects(subject, vocab::skos_alt_label()))
            alts.push_back(rdf::term_text(alt));
        std::sort(alts.begin(), alts.end());
        row.push_back(text::join(alts, "|"));

        std::vector<std::string> defs;
        for (const auto& node : store_.objects(subject, vocab::skos_definition())) {
            auto dtext = store_.first_object(node, v.definition_text());
            auto kind = store_.first_object(node, v.definition_source_kind());
            auto ref = store_.first_object(node, v.definition_source_ref());
            std::string cell = dtext ? rdf::term_text(*dtext) : "";
            cell += " [";
            cell += kind ? rdf::term_text(*kind) : "unknown";
            if (ref) cell += ": " + rdf::term_text(*ref);
            cell += "]";
            defs.push_back(cell);
        }
        std::sort(defs.begin(), defs.end());
        row.push_back(text::join(defs, " | "));
        rows.push_back(std::move(row));
    }
    return csv::write(rows);
}

std::string Glossary::report_turtle() const {
    auto v = config_.vocab();
    std::vector<Quad> quads;
    const std::vector<Iri> props = {vocab::skos_pref_label(), vocab::skos_alt_label(),
                                    vocab::skos_definition(), vocab::skos_broader(),
                                    vocab::rdf_type()};
    for (const auto& subject : store_.subjects(vocab::skos_pref_label())) {
        for (const auto& p : props)
            for (const auto& q : store_.match(subject, p, std::nullopt, std::nullopt))
                quads.push_back({q.subject, q.predicate, q.object, graph_});
        for (const auto& node : store_.objects(subject, vocab::skos_definition()))
            for (const auto& p : {v.definition_text(), v.definition_source_kind(),
                                  v.definition_source_ref()})
                for (const auto& q : store_.match(node, p, std::nullopt, std::nullopt))
                    quads.push_back({q.subject, q.predicate, q.object, graph_});
    }
    return rdf::serialize_turtle(quads);
}

std::vector<MappingLink> Glossary::parse_mapping_csv(std::string_view csv_text) {
    auto rows = csv::parse(csv_text);
    if (rows.empty()) throw Error("mapping CSV is empty");
    std::size_t start = 0;
    if (!rows[0].empty() && text::to_lower(rows[0][0]) == "from") start = 1; // header
    std::vector<MappingLink> links;
    for (std::size_t i = start; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.size() < 3)
            throw Error("mapping CSV row " + std::to_string(i + 1) +
                        ": expected from,to,strength");
        auto strength = strength_from(row[2]);
        if (!strength)
            throw Error("mapping CSV row " + std::to_string(i + 1) + ": bad strength '" + row[2] +
                        "'");
        links.push_back(MappingLink{Iri{row[0]}, Iri{row[1]}, *strength});
    }
    return links;
}

} // namespace dgkit::terminology
