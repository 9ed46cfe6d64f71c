#include "dgkit/sparql/catalogue.hpp"

#include <algorithm>

#include "dgkit/errors.hpp"
#include "dgkit/rdf/vocab.hpp"
#include "dgkit/text.hpp"

namespace dgkit::sparql {

namespace {

std::string name_token(const std::string& name) {
    std::string token;
    for (char c : name)
        token.push_back(uri::is_token(std::string_view(&c, 1)) ? c : '_');
    return token.empty() ? "query" : token;
}

rdf::Iri catalogue_graph(const ToolkitConfig& config) {
    return rdf::Iri{config.graph_base + "/graphs/queries"};
}

std::map<std::string, std::string> config_prefixes(const ToolkitConfig& config) {
    auto prefixes = well_known_prefixes();
    prefixes[""] = config.vocab().property_base;
    return prefixes;
}

} // namespace

std::vector<rdf::Quad> catalogue_quads(const ToolkitConfig& config, const std::string& name,
                                       const std::string& text,
                                       const std::vector<std::string>& annotations) {
    auto v = config.vocab();
    rdf::Iri q = config.mint("query", name_token(name));
    rdf::Iri g = catalogue_graph(config);
    std::vector<rdf::Quad> quads;
    quads.push_back({q, rdf::vocab::rdf_type(), v.query_class(), g});
    quads.push_back({q, rdf::vocab::skos_pref_label(), rdf::Literal{name}, g});
    quads.push_back({q, v.query_text(), rdf::Literal{text}, g});
    for (const auto& a : annotations) {
        rdf::Term object = rdf::is_valid_iri(a) ? rdf::Term{rdf::Iri{a}}
                                                : rdf::Term{rdf::Literal{a}};
        quads.push_back({q, v.annotation(), object, g});
    }
    return quads;
}

rdf::Iri register_query(rdf::GraphStore& store, const ToolkitConfig& config,
                        const std::string& name, const std::string& text,
                        const std::vector<std::string>& annotations) {
    parse_query(text, config_prefixes(config)); // must parse; nothing stored otherwise
    auto quads = catalogue_quads(config, name, text, annotations);
    for (const auto& q : quads) store.insert(q);
    return std::get<rdf::Iri>(quads.front().subject);
}

std::vector<CatalogueEntry> query_catalogue(const rdf::GraphStore& store,
                                            const ToolkitConfig& config) {
    auto v = config.vocab();
    std::vector<CatalogueEntry> out;
    for (const auto& subject : store.subjects(rdf::vocab::rdf_type(), rdf::Term{v.query_class()})) {
        CatalogueEntry entry;
        entry.uri = std::get<rdf::Iri>(subject);
        if (auto label = store.first_object(subject, rdf::vocab::skos_pref_label()))
            entry.name = rdf::term_text(*label);
        if (auto text = store.first_object(subject, v.query_text()))
            entry.text = rdf::term_text(*text);
        for (const auto& a : store.objects(subject, v.annotation()))
            entry.annotations.push_back(rdf::term_text(a));
        out.push_back(std::move(entry));
    }
    std::sort(out.begin(), out.end(),
              [](const CatalogueEntry& a, const CatalogueEntry& b) { return a.name < b.name; });
    return out;
}

SolutionTable run_named_query(const rdf::GraphStore& store, const ToolkitConfig& config,
                              const std::string& name) {
    for (const auto& entry : query_catalogue(store, config)) {
        if (entry.name == name) {
            Query q = parse_query(entry.text, config_prefixes(config));
            return evaluate(q, store);
        }
    }
    throw Error("no registered query named '" + name + "'");
}

} // namespace dgkit::sparql
