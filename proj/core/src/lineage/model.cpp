#include "dgkit/lineage/model.hpp"

#include <algorithm>

#include "dgkit/errors.hpp"
#include "dgkit/rdf/vocab.hpp"
#include "dgkit/text.hpp"

namespace dgkit::lineage {

using rdf::Iri;
using rdf::Literal;
using rdf::Term;
namespace vocab = rdf::vocab;

std::string to_string(RuleKind kind) {
    switch (kind) {
    case RuleKind::CopyElement: return "copy_element";
    case RuleKind::Dtc: return "dtc";
    case RuleKind::Dtn: return "dtn";
    case RuleKind::StudyDay: return "study_day";
    case RuleKind::Opaque: return "opaque";
    }
    return "opaque";
}

std::optional<RuleKind> rule_kind_from(std::string_view s) {
    std::string folded = text::to_lower(std::string(s));
    if (folded == "copy_element") return RuleKind::CopyElement;
    if (folded == "dtc") return RuleKind::Dtc;
    if (folded == "dtn") return RuleKind::Dtn;
    if (folded == "study_day") return RuleKind::StudyDay;
    if (folded == "opaque") return RuleKind::Opaque;
    return std::nullopt;
}

UcmModel::UcmModel(rdf::GraphStore& store, const ToolkitConfig& config)
    : UcmModel(store, config, Iri{config.graph_base + "/graphs/ucm"}) {}

UcmModel::UcmModel(rdf::GraphStore& store, const ToolkitConfig& config, Iri graph)
    : store_(store), config_(config), graph_(std::move(graph)) {}

rdf::Iri UcmModel::register_variable(const VariableNode& v) {
    auto outcome = uri::validate_uri(v.uri, config_.registry);
    if (!outcome.ok())
        throw Error("variable URI fails governance: " + v.uri.value + " (" +
                    outcome.violations.front() + ")");
    if (v.data_stage < 1) throw Error("data_stage must be >= 1");
    if (v.fully_qualified_label.empty())
        throw Error("variable needs a fully qualified label: " + v.uri.value);
    if (v.broader &&
        store_.match(Term{*v.broader}, vocab::skos_pref_label(), std::nullopt, std::nullopt)
            .empty())
        throw Error("broader concept not in store: " + v.broader->value);
    if (v.reference_list &&
        store_.match(Term{*v.reference_list}, std::nullopt, std::nullopt, std::nullopt).empty())
        throw Error("reference list not in store: " + v.reference_list->value);

    auto voc = config_.vocab();
    store_.insert_with_inverse({v.uri, vocab::rdf_type(), voc.variable_class(), graph_});
    store_.insert_with_inverse(
        {v.uri, vocab::skos_pref_label(), Literal{v.fully_qualified_label}, graph_});
    store_.insert_with_inverse(
        {v.uri, voc.data_stage(),
         Literal{std::to_string(v.data_stage), rdf::xsd::integer()}, graph_});
    if (!v.standard.empty())
        store_.insert_with_inverse({v.uri, voc.standard(), Literal{v.standard}, graph_});
    if (!v.domain.empty())
        store_.insert_with_inverse({v.uri, voc.domain(), Literal{v.domain}, graph_});
    if (!v.name.empty())
        store_.insert_with_inverse({v.uri, voc.variable_name(), Literal{v.name}, graph_});
    if (v.broader)
        store_.insert_with_inverse({v.uri, vocab::skos_broader(), *v.broader, graph_});
    if (v.reference_list)
        store_.insert_with_inverse({v.uri, voc.reference_list(), *v.reference_list, graph_});
    return v.uri;
}

void UcmModel::check_arity(const Derivation& d) const {
    if (d.inputs.empty() || d.outputs.empty())
        throw Error("derivation needs at least one input and one output: " + d.uri.value);
    auto expect = [&](std::size_t in, std::size_t out) {
        if (d.inputs.size() != in || d.outputs.size() != out)
            throw Error("arity violation for " + to_string(d.rule_kind) + " derivation " +
                        d.uri.value + ": expected " + std::to_string(in) + " input(s), " +
                        std::to_string(out) + " output(s)");
    };
    switch (d.rule_kind) {
    case RuleKind::CopyElement: expect(1, 1); break;
    case RuleKind::Dtc: expect(2, 1); break;
    case RuleKind::Dtn: expect(1, 1); break;
    case RuleKind::StudyDay: expect(1, 1); break; // reference start read from context
    case RuleKind::Opaque: break;
    }
}

rdf::Iri UcmModel::register_derivation(const Derivation& d) {
    auto outcome = uri::validate_uri(d.uri, config_.registry);
    if (!outcome.ok())
        throw Error("derivation URI fails governance: " + d.uri.value + " (" +
                    outcome.violations.front() + ")");
    check_arity(d);
    for (const auto& ref : d.inputs)
        if (!is_registered_variable(ref))
            throw Error("dangling derivation input: " + ref.value);
    for (const auto& ref : d.outputs)
        if (!is_registered_variable(ref))
            throw Error("dangling derivation output: " + ref.value);

    auto voc = config_.vocab();
    store_.insert_with_inverse({d.uri, vocab::rdf_type(), voc.derivation_class(), graph_});
    store_.insert_with_inverse({d.uri, vocab::skos_pref_label(), Literal{d.name}, graph_});
    store_.insert_with_inverse({d.uri, voc.transformation_rule(), Literal{d.rule_text}, graph_});
    store_.insert_with_inverse({d.uri, voc.rule_kind(), Literal{to_string(d.rule_kind)}, graph_});
    for (const auto& in : d.inputs)
        store_.insert_with_inverse({in, voc.is_input_of(), d.uri, graph_});
    for (const auto& out : d.outputs)
        store_.insert_with_inverse({d.uri, voc.has_output(), out, graph_});
    return d.uri;
}

bool UcmModel::is_registered_variable(const Iri& uri) const {
    return !store_.match(Term{uri}, config_.vocab().data_stage(), std::nullopt, std::nullopt)
                .empty();
}

std::optional<VariableNode> UcmModel::read_variable(const Iri& uri) const {
    auto voc = config_.vocab();
    auto stage = store_.first_object(Term{uri}, voc.data_stage());
    if (!stage) return std::nullopt;
    VariableNode v;
    v.uri = uri;
    v.data_stage = std::atoi(rdf::term_text(*stage).c_str());
    if (auto label = store_.first_object(Term{uri}, vocab::skos_pref_label()))
        v.fully_qualified_label = rdf::term_text(*label);
    if (auto s = store_.first_object(Term{uri}, voc.standard())) v.standard = rdf::term_text(*s);
    if (auto d = store_.first_object(Term{uri}, voc.domain())) v.domain = rdf::term_text(*d);
    if (auto n = store_.first_object(Term{uri}, voc.variable_name())) v.name = rdf::term_text(*n);
    if (auto b = store_.first_object(Term{uri}, vocab::skos_broader()))
        if (auto* iri = std::get_if<Iri>(&*b)) v.broader = *iri;
    if (auto r = store_.first_object(Term{uri}, voc.reference_list()))
        if (auto* iri = std::get_if<Iri>(&*r)) v.reference_list = *iri;
    return v;
}

std::optional<Derivation> UcmModel::read_derivation(const Iri& uri) const {
    auto voc = config_.vocab();
    auto rule = store_.first_object(Term{uri}, voc.transformation_rule());
    if (!rule) return std::nullopt;
    Derivation d;
    d.uri = uri;
    d.rule_text = rdf::term_text(*rule);
    if (auto label = store_.first_object(Term{uri}, vocab::skos_pref_label()))
        d.name = rdf::term_text(*label);
    if (auto kind = store_.first_object(Term{uri}, voc.rule_kind()))
        if (auto parsed = rule_kind_from(rdf::term_text(*kind))) d.rule_kind = *parsed;
    for (const auto& q : store_.match(std::nullopt, voc.is_input_of(), Term{uri}, std::nullopt))
        if (auto* iri = std::get_if<Iri>(&q.subject)) d.inputs.push_back(*iri);
    for (const auto& out : store_.objects(Term{uri}, voc.has_output()))
        if (auto* iri = std::get_if<Iri>(&out)) d.outputs.push_back(*iri);
    std::sort(d.inputs.begin(), d.inputs.end());
    d.inputs.erase(std::unique(d.inputs.begin(), d.inputs.end()), d.inputs.end());
    std::sort(d.outputs.begin(), d.outputs.end());
    d.outputs.erase(std::unique(d.outputs.begin(), d.outputs.end()), d.outputs.end());
    return d;
}

std::optional<std::string> UcmModel::variable_name(const Iri& uri) const {
    if (auto n = store_.first_object(Term{uri}, config_.vocab().variable_name()))
        return rdf::term_text(*n);
    return std::nullopt;
}

} // namespace dgkit::lineage
