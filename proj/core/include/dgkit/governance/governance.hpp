#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dgkit/config.hpp"
#include "dgkit/etl/frame.hpp"
#include "dgkit/rdf/store.hpp"

namespace dgkit::governance {

enum class CheckKind { MissingValue, Suppression, NoiseAddition, DateOffset, Custom };
std::string to_string(CheckKind kind);
std::optional<CheckKind> check_kind_from(std::string_view s);
bool is_executable(CheckKind kind);

struct CheckSpec {
    CheckKind kind = CheckKind::MissingValue;
    double noise_scale = 0;  // NoiseAddition: uniform in [-scale, +scale]
    std::uint64_t seed = 0;  // rule-level seed component
    std::string custom_name; // Custom
};

struct GovernancePrinciple {
    rdf::Iri uri;
    std::string name;
    std::string source_document;
};

struct GovernanceIssue {
    rdf::Iri uri;
    std::string name;
};

struct GovernanceRule {
    rdf::Iri uri;
    std::string description;
    CheckSpec check;
    std::vector<rdf::Iri> targets;        // variables/datasets the rule applies to
    std::optional<std::string> study_scope; // absent = generic applicability
};

// principle -> issue -> rule -> target quads, traversable both ways through
// the ontology's inverse pairs.
class Cascade {
public:
    Cascade(rdf::GraphStore& store, const ToolkitConfig& config);
    Cascade(rdf::GraphStore& store, const ToolkitConfig& config, rdf::Iri graph);

    void link(const GovernancePrinciple& principle, const GovernanceIssue& issue,
              const GovernanceRule& rule);

    std::vector<rdf::Iri> principles_governing(const rdf::Iri& target) const;
    std::vector<GovernanceRule> rules() const;
    std::vector<GovernanceRule> executable_rules() const;

    struct Row {
        std::string principle, issue, rule, check_kind, target;
    };
    // full cascade dump; orphan rules (unreachable from any principle) are
    // appended with an empty principle/issue and flagged in the text form
    std::vector<Row> report_rows() const;
    std::string report_csv() const;
    std::string report_text() const;

    const rdf::Iri& graph() const { return graph_; }

    // 4-column import: principle,issue,rule,target (+ optional check_kind)
    static std::vector<rdf::Quad> import_csv_quads(std::string_view csv_text,
                                                   const ToolkitConfig& config);

private:
    rdf::GraphStore& store_;
    const ToolkitConfig& config_;
    rdf::Iri graph_;
};

// All governance rules present in the store, sorted by URI.
std::vector<GovernanceRule> read_rules(const rdf::GraphStore& store,
                                       const ToolkitConfig& config);

// ---- executable checks ----

struct CheckFinding {
    rdf::Iri rule;
    rdf::Iri target;
    std::string column;
    std::vector<std::size_t> rows; // 1-based data rows
};

struct CheckReport {
    std::vector<CheckFinding> findings;
    std::vector<std::string> unmappable; // targets with no dataset column
    std::vector<std::string> notes;      // transform kinds reported, not run
    bool ok() const { return findings.empty() && unmappable.empty(); }
};

std::string check_report_csv(const CheckReport& report);
std::string check_report_text(const CheckReport& report);

// MissingValue rules flag null/empty cells; transform kinds only note
// themselves. Targets resolve through `variable_column_map` (URI -> column);
// unmapped targets are reported, never silently skipped.
CheckReport run_checks(const rdf::GraphStore& store, const ToolkitConfig& config,
                       const etl::Frame& dataset,
                       const std::map<std::string, std::string>& variable_column_map);

// ---- anonymisation ----

struct AnonymisationResult {
    etl::Frame frame;
    std::vector<rdf::Quad> audit; // which rule touched which column, no values
};

// Deterministic under (dataset, rules, seed): suppression writes the
// redaction token, noise is seeded uniform in [-scale, +scale], date offsets
// shift all of a subject's targeted date cells by one per-subject constant
// in [1, 365] days.
AnonymisationResult anonymise(const etl::Frame& dataset,
                              const std::vector<GovernanceRule>& rules, std::uint64_t seed,
                              const std::map<std::string, std::string>& target_columns,
                              const ToolkitConfig& config);

std::int64_t date_offset_days(std::uint64_t seed, const std::string& subject_id);

// ---- FAIR ----

struct FairRow {
    rdf::Iri dataset;
    bool findable = false, accessible = false, interoperable = false, reusable = false;
    int score = 0;
    std::vector<std::string> gaps;
};

std::vector<FairRow> fair_report(const rdf::GraphStore& store, const ToolkitConfig& config,
                                 const std::vector<rdf::Iri>& datasets);
std::string fair_csv(const std::vector<FairRow>& rows);
std::string fair_text(const std::vector<FairRow>& rows);

} // namespace dgkit::governance
