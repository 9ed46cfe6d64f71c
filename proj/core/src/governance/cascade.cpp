#include <algorithm>
#include <set>

#include "dgkit/csv.hpp"
#include "dgkit/errors.hpp"
#include "dgkit/governance/governance.hpp"
#include "dgkit/rdf/vocab.hpp"
#include "dgkit/text.hpp"

namespace dgkit::governance {

using rdf::Iri;
using rdf::Literal;
using rdf::Quad;
using rdf::Term;
namespace vocab = rdf::vocab;

std::string to_string(CheckKind kind) {
    switch (kind) {
    case CheckKind::MissingValue: return "missing_value";
    case CheckKind::Suppression: return "suppression";
    case CheckKind::NoiseAddition: return "noise_addition";
    case CheckKind::DateOffset: return "date_offset";
    case CheckKind::Custom: return "custom";
    }
    return "custom";
}

std::optional<CheckKind> check_kind_from(std::string_view s) {
    std::string folded = text::to_lower(std::string(s));
    if (folded == "missing_value") return CheckKind::MissingValue;
    if (folded == "suppression") return CheckKind::Suppression;
    if (folded == "noise_addition") return CheckKind::NoiseAddition;
    if (folded == "date_offset") return CheckKind::DateOffset;
    if (folded == "custom") return CheckKind::Custom;
    return std::nullopt;
}

bool is_executable(CheckKind kind) {
    return kind != CheckKind::Custom;
}

Cascade::Cascade(rdf::GraphStore& store, const ToolkitConfig& config)
    : Cascade(store, config, Iri{config.graph_base + "/graphs/governance"}) {}

Cascade::Cascade(rdf::GraphStore& store, const ToolkitConfig& config, Iri graph)
    : store_(store), config_(config), graph_(std::move(graph)) {}

void Cascade::link(const GovernancePrinciple& principle, const GovernanceIssue& issue,
                   const GovernanceRule& rule) {
    for (const auto& u : {principle.uri, issue.uri, rule.uri}) {
        auto outcome = uri::validate_uri(u, config_.registry);
        if (!outcome.ok())
            throw Error("governance URI fails governance grammar: " + u.value + " (" +
                        outcome.violations.front() + ")");
    }
    if (rule.targets.empty() && is_executable(rule.check.kind))
        throw Error("executable rule needs at least one target: " + rule.uri.value);
    if (rule.check.kind == CheckKind::NoiseAddition && rule.check.noise_scale <= 0)
        throw Error("noise_addition scale must be positive");

    auto v = config_.vocab();
    auto put = [&](const Quad& q) { store_.insert_with_inverse(q); };

    put({principle.uri, vocab::rdf_type(), v.principle_class(), graph_});
    put({principle.uri, vocab::skos_pref_label(), Literal{principle.name}, graph_});
    if (!principle.source_document.empty())
        put({principle.uri, v.source_document(), Literal{principle.source_document}, graph_});

    put({issue.uri, vocab::rdf_type(), v.issue_class(), graph_});
    put({issue.uri, vocab::skos_pref_label(), Literal{issue.name}, graph_});
    put({principle.uri, v.has_issue(), issue.uri, graph_});

    put({rule.uri, vocab::rdf_type(), v.governance_rule_class(), graph_});
    put({rule.uri, vocab::skos_pref_label(), Literal{rule.description}, graph_});
    put({rule.uri, v.check_kind(), Literal{to_string(rule.check.kind)}, graph_});
    if (rule.check.kind == CheckKind::NoiseAddition) {
        put({rule.uri, v.noise_scale(),
             Literal{std::to_string(rule.check.noise_scale), rdf::xsd::decimal()}, graph_});
        put({rule.uri, v.check_seed(),
             Literal{std::to_string(rule.check.seed), rdf::xsd::integer()}, graph_});
    }
    if (rule.study_scope)
        put({rule.uri, v.applicability(), Literal{*rule.study_scope}, graph_});
    put({issue.uri, v.has_rule(), rule.uri, graph_});
    for (const auto& target : rule.targets)
        put({rule.uri, v.applies_to(), target, graph_});
}

std::vector<Iri> Cascade::principles_governing(const Iri& target) const {
    auto v = config_.vocab();
    std::set<std::string> seen;
    std::vector<Iri> out;
    for (const auto& rq : store_.match(std::nullopt, v.applies_to(), Term{target}, std::nullopt)) {
        auto* rule = std::get_if<Iri>(&rq.subject);
        if (!rule) continue;
        for (const auto& iq : store_.match(std::nullopt, v.has_rule(), Term{*rule}, std::nullopt)) {
            auto* issue = std::get_if<Iri>(&iq.subject);
            if (!issue) continue;
            for (const auto& pq :
                 store_.match(std::nullopt, v.has_issue(), Term{*issue}, std::nullopt)) {
                auto* principle = std::get_if<Iri>(&pq.subject);
                if (principle && seen.insert(principle->value).second) out.push_back(*principle);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<GovernanceRule> read_rules(const rdf::GraphStore& store,
                                       const ToolkitConfig& config) {
    auto v = config.vocab();
    std::vector<GovernanceRule> out;
    for (const auto& subject :
         store.subjects(vocab::rdf_type(), Term{v.governance_rule_class()})) {
        auto* uri = std::get_if<Iri>(&subject);
        if (!uri) continue;
        GovernanceRule rule;
        rule.uri = *uri;
        if (auto label = store.first_object(subject, vocab::skos_pref_label()))
            rule.description = rdf::term_text(*label);
        if (auto kind = store.first_object(subject, v.check_kind()))
            if (auto parsed = check_kind_from(rdf::term_text(*kind))) rule.check.kind = *parsed;
        if (auto scale = store.first_object(subject, v.noise_scale()))
            rule.check.noise_scale = std::atof(rdf::term_text(*scale).c_str());
        if (auto seed = store.first_object(subject, v.check_seed()))
            rule.check.seed = static_cast<std::uint64_t>(
                std::strtoull(rdf::term_text(*seed).c_str(), nullptr, 10));
        if (auto scope = store.first_object(subject, v.applicability()))
            rule.study_scope = rdf::term_text(*scope);
        for (const auto& t : store.objects(subject, v.applies_to()))
            if (auto* iri = std::get_if<Iri>(&t)) rule.targets.push_back(*iri);
        std::sort(rule.targets.begin(), rule.targets.end());
        out.push_back(std::move(rule));
    }
    std::sort(out.begin(), out.end(),
              [](const GovernanceRule& a, const GovernanceRule& b) { return a.uri < b.uri; });
    return out;
}

std::vector<GovernanceRule> Cascade::rules() const {
    return read_rules(store_, config_);
}

std::vector<GovernanceRule> Cascade::executable_rules() const {
    std::vector<GovernanceRule> out;
    for (auto& rule : rules())
        if (is_executable(rule.check.kind)) out.push_back(std::move(rule));
    return out;
}

std::vector<Cascade::Row> Cascade::report_rows() const {
    auto v = config_.vocab();
    std::vector<Row> rows;
    std::set<std::string> covered_rules;

    auto label_of = [&](const Term& t) {
        if (auto label = store_.first_object(t, vocab::skos_pref_label()))
            return rdf::term_text(*label);
        return rdf::term_text(t);
    };

    for (const auto& principle :
         store_.subjects(vocab::rdf_type(), Term{v.principle_class()})) {
        for (const auto& issue : store_.objects(principle, v.has_issue())) {
            for (const auto& rule : store_.objects(issue, v.has_rule())) {
                covered_rules.insert(rdf::term_text(rule));
                std::string kind;
                if (auto k = store_.first_object(rule, v.check_kind())) kind = rdf::term_text(*k);
                auto targets = store_.objects(rule, v.applies_to());
                if (targets.empty())
                    rows.push_back({label_of(principle), label_of(issue), label_of(rule), kind, ""});
                for (const auto& target : targets)
                    rows.push_back({label_of(principle), label_of(issue), label_of(rule), kind,
                                    rdf::term_text(target)});
            }
        }
    }

    // orphan rules are model violations: reachable from no principle
    for (const auto& rule : store_.subjects(vocab::rdf_type(), Term{v.governance_rule_class()})) {
        if (covered_rules.contains(rdf::term_text(rule))) continue;
        std::string kind;
        if (auto k = store_.first_object(rule, v.check_kind())) kind = rdf::term_text(*k);
        auto targets = store_.objects(rule, v.applies_to());
        if (targets.empty()) rows.push_back({"", "", label_of(rule), kind, ""});
        for (const auto& target : targets)
            rows.push_back({"", "", label_of(rule), kind, rdf::term_text(target)});
    }

    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return std::tie(a.principle, a.issue, a.rule, a.target) <
               std::tie(b.principle, b.issue, b.rule, b.target);
    });
    return rows;
}

std::string Cascade::report_csv() const {
    std::vector<csv::Row> rows;
    rows.push_back({"principle", "issue", "rule", "check_kind", "target"});
    for (const auto& r : report_rows())
        rows.push_back({r.principle, r.issue, r.rule, r.check_kind, r.target});
    return csv::write(rows);
}

std::string Cascade::report_text() const {
    std::string out = "governance cascade:\n";
    auto rows = report_rows();
    if (rows.empty()) return out + "  (empty)\n";
    for (const auto& r : rows) {
        if (r.principle.empty()) {
            out += "  ORPHAN RULE " + r.rule + " [" + r.check_kind + "] -> " + r.target + "\n";
        } else {
            out += "  " + r.principle + " -> " + r.issue + " -> " + r.rule + " [" +
                   r.check_kind + "] -> " + r.target + "\n";
        }
    }
    return out;
}

std::vector<Quad> Cascade::import_csv_quads(std::string_view csv_text,
                                            const ToolkitConfig& config) {
    auto rows = csv::parse(csv_text);
    if (rows.empty()) throw Error("cascade CSV is empty");
    std::size_t start = 0;
    if (!rows[0].empty() && text::to_lower(rows[0][0]) == "principle") start = 1;

    auto v = config.vocab();
    Iri graph{config.graph_base + "/graphs/governance"};
    auto to_uri = [&](const std::string& value, const char* segment) {
        if (rdf::is_valid_iri(value) && value.find("://") != std::string::npos)
            return Iri{value};
        std::string token;
        for (char c : value) token.push_back(uri::is_token(std::string_view(&c, 1)) ? c : '_');
        return config.mint(segment, token);
    };

    std::vector<Quad> quads;
    for (std::size_t i = start; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.size() < 4)
            throw Error("cascade CSV row " + std::to_string(i + 1) +
                        ": expected principle,issue,rule,target");
        Iri principle = to_uri(row[0], "principle");
        Iri issue = to_uri(row[1], "issue");
        Iri rule = to_uri(row[2], "rule");
        Iri target{row[3]};
        std::string kind = row.size() > 4 && !row[4].empty() ? row[4] : "missing_value";
        if (!check_kind_from(kind))
            throw Error("cascade CSV row " + std::to_string(i + 1) + ": bad check kind '" +
                        kind + "'");

        quads.push_back({principle, vocab::rdf_type(), v.principle_class(), graph});
        quads.push_back({principle, vocab::skos_pref_label(), Literal{row[0]}, graph});
        quads.push_back({issue, vocab::rdf_type(), v.issue_class(), graph});
        quads.push_back({issue, vocab::skos_pref_label(), Literal{row[1]}, graph});
        quads.push_back({principle, v.has_issue(), issue, graph});
        quads.push_back({rule, vocab::rdf_type(), v.governance_rule_class(), graph});
        quads.push_back({rule, vocab::skos_pref_label(), Literal{row[2]}, graph});
        quads.push_back({rule, v.check_kind(), Literal{kind}, graph});
        quads.push_back({issue, v.has_rule(), rule, graph});
        quads.push_back({rule, v.applies_to(), target, graph});
    }
    return quads;
}

} // namespace dgkit::governance
