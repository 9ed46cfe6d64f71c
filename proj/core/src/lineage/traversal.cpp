#include "dgkit/lineage/traversal.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "dgkit/csv.hpp"
#include "dgkit/errors.hpp"
#include "dgkit/rdf/vocab.hpp"

namespace dgkit::lineage {

using rdf::Iri;
using rdf::Term;

TechnicalLineage technical_lineage(const UcmModel& model, const Iri& variable) {
    if (!model.is_registered_variable(variable))
        throw Error("not a registered variable: " + variable.value);
    auto voc = model.config().vocab();
    const auto& store = model.store();

    TechnicalLineage result;
    std::vector<Iri> producing, consuming;
    for (const auto& q : store.match(std::nullopt, voc.has_output(), Term{variable}, std::nullopt))
        if (auto* iri = std::get_if<Iri>(&q.subject)) producing.push_back(*iri);
    for (const auto& d : store.objects(Term{variable}, voc.is_input_of()))
        if (auto* iri = std::get_if<Iri>(&d)) consuming.push_back(*iri);

    auto tidy = [](std::vector<Iri>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    tidy(producing);
    tidy(consuming);
    for (const auto& d : producing)
        if (auto deriv = model.read_derivation(d)) result.producing.push_back(std::move(*deriv));
    for (const auto& d : consuming)
        if (auto deriv = model.read_derivation(d)) result.consuming.push_back(std::move(*deriv));
    return result;
}

namespace {

struct PathSearch {
    const UcmModel& model;
    const Iri& sink;
    std::size_t max_paths;
    std::size_t max_depth;
    std::vector<LineagePath> found;
    LineagePath current;
    std::set<std::string> on_path;

    void visit_variable(const Iri& var) {
        if (found.size() >= max_paths) return;
        current.push_back(var);
        on_path.insert(var.value);
        if (var == sink) {
            found.push_back(current);
        } else if (current.size() / 2 < max_depth) {
            auto voc = model.config().vocab();
            std::vector<Iri> derivations;
            for (const auto& d : model.store().objects(Term{var}, voc.is_input_of()))
                if (auto* iri = std::get_if<Iri>(&d)) derivations.push_back(*iri);
            std::sort(derivations.begin(), derivations.end());
            for (const auto& d : derivations) {
                if (on_path.contains(d.value)) continue;
                visit_derivation(d);
                if (found.size() >= max_paths) break;
            }
        }
        on_path.erase(var.value);
        current.pop_back();
    }

    void visit_derivation(const Iri& deriv) {
        current.push_back(deriv);
        on_path.insert(deriv.value);
        auto voc = model.config().vocab();
        std::vector<Iri> outputs;
        for (const auto& out : model.store().objects(Term{deriv}, voc.has_output()))
            if (auto* iri = std::get_if<Iri>(&out)) outputs.push_back(*iri);
        std::sort(outputs.begin(), outputs.end());
        for (const auto& out : outputs) {
            if (on_path.contains(out.value)) continue;
            visit_variable(out);
            if (found.size() >= max_paths) break;
        }
        on_path.erase(deriv.value);
        current.pop_back();
    }
};

} // namespace

std::vector<LineagePath> business_lineage(const UcmModel& model, const Iri& source,
                                          const Iri& sink) {
    if (!model.is_registered_variable(source))
        throw Error("not a registered variable: " + source.value);
    if (!model.is_registered_variable(sink))
        throw Error("not a registered variable: " + sink.value);

    PathSearch search{model, sink, model.config().max_paths, model.config().max_depth, {}, {}, {}};
    search.visit_variable(source);

    auto joined = [](const LineagePath& p) {
        std::string s;
        for (const auto& uri : p) {
            s += uri.value;
            s.push_back('\x1e');
        }
        return s;
    };
    std::sort(search.found.begin(), search.found.end(),
              [&](const LineagePath& a, const LineagePath& b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  return joined(a) < joined(b);
              });
    return search.found;
}

namespace {

std::string escape_regex_literal(const std::string& pattern) {
    std::string out;
    for (char c : pattern) {
        if (c == '"') out += "\\\"";
        else if (c == '\\') out += "\\\\";
        else out.push_back(c);
    }
    return out;
}

} // namespace

sparql::SolutionTable conceptual_rollup(const UcmModel& model,
                                        const std::string& concept_pattern) {
    std::string query_text =
        "SELECT DISTINCT ?Input_Data_Stage ?Input_Variable ?Derivation ?Derivation_Rule "
        "?Output_Variable ?Output_Data_Stage\n"
        "WHERE {\n"
        "  # main search criteria\n"
        "  FILTER(REGEX(?Conceptual_Output_Variable,\"" +
        escape_regex_literal(concept_pattern) +
        "\")) .\n"
        "  ?Output_Variable_URI skos:broader ?Conceptual_Output_Variable_URI .\n"
        "\n"
        "  # search constraint\n"
        "  ?Input_Variable_URI :isInputOf ?Derivation_URI .\n"
        "  ?Derivation_URI :hasOutput ?Output_Variable_URI .\n"
        "  ?Derivation_URI :transformationRule ?Derivation_Rule .\n"
        "  ?Input_Variable_URI :dataStage ?Input_Data_Stage .\n"
        "  ?Output_Variable_URI :dataStage ?Output_Data_Stage .\n"
        "\n"
        "  # labeling\n"
        "  ?Conceptual_Output_Variable_URI skos:prefLabel ?Conceptual_Output_Variable .\n"
        "  ?Input_Variable_URI skos:prefLabel ?Input_Variable .\n"
        "  ?Output_Variable_URI skos:prefLabel ?Output_Variable .\n"
        "  ?Derivation_URI skos:prefLabel ?Derivation .\n"
        "}\n"
        "ORDER BY ?Input_Data_Stage ?Output_Data_Stage ?Input_Variable ?Output_Variable\n";

    auto prefixes = sparql::well_known_prefixes();
    prefixes[""] = model.config().vocab().property_base;
    sparql::Query query = sparql::parse_query(query_text, prefixes);
    return sparql::evaluate(query, model.store());
}

namespace {
const std::vector<std::string>& rollup_headers() {
    static const std::vector<std::string> headers = {
        "Input Data Stage", "Input Variable",  "Derivation",
        "Derivation Rule",  "Output Variable", "Output Data Stage"};
    return headers;
}

sparql::SolutionTable with_headers(const sparql::SolutionTable& table) {
    sparql::SolutionTable renamed = table;
    if (renamed.vars.size() == rollup_headers().size()) renamed.vars = rollup_headers();
    return renamed;
}
} // namespace

std::string rollup_csv(const sparql::SolutionTable& table) {
    return sparql::to_csv(with_headers(table));
}

std::string rollup_text(const sparql::SolutionTable& table) {
    return sparql::to_text(with_headers(table));
}

std::optional<LineagePath> find_cycle(const UcmModel& model) {
    auto voc = model.config().vocab();
    const auto& store = model.store();

    // variable -> derivations -> outputs, DFS with colour marking
    std::set<std::string> done;
    std::vector<Iri> variables;
    for (const auto& q : store.match(std::nullopt, voc.data_stage(), std::nullopt, std::nullopt))
        if (auto* iri = std::get_if<Iri>(&q.subject)) variables.push_back(*iri);
    std::sort(variables.begin(), variables.end());
    variables.erase(std::unique(variables.begin(), variables.end()), variables.end());

    std::set<std::string> on_stack;
    LineagePath stack;
    std::optional<LineagePath> cycle;

    std::function<bool(const Iri&)> visit = [&](const Iri& var) -> bool {
        if (on_stack.contains(var.value)) {
            auto it = std::find_if(stack.begin(), stack.end(),
                                   [&](const Iri& u) { return u == var; });
            cycle = LineagePath(it, stack.end());
            cycle->push_back(var);
            return true;
        }
        if (done.contains(var.value)) return false;
        on_stack.insert(var.value);
        stack.push_back(var);
        std::vector<Iri> derivations;
        for (const auto& d : store.objects(Term{var}, voc.is_input_of()))
            if (auto* iri = std::get_if<Iri>(&d)) derivations.push_back(*iri);
        std::sort(derivations.begin(), derivations.end());
        for (const auto& d : derivations) {
            stack.push_back(d);
            std::vector<Iri> outputs;
            for (const auto& out : store.objects(Term{d}, voc.has_output()))
                if (auto* iri = std::get_if<Iri>(&out)) outputs.push_back(*iri);
            std::sort(outputs.begin(), outputs.end());
            for (const auto& out : outputs)
                if (visit(out)) return true;
            stack.pop_back();
        }
        stack.pop_back();
        on_stack.erase(var.value);
        done.insert(var.value);
        return false;
    };

    for (const auto& var : variables)
        if (visit(var)) break;
    return cycle;
}

} // namespace dgkit::lineage
