#include <algorithm>

#include "dgkit/csv.hpp"
#include "dgkit/governance/governance.hpp"
#include "dgkit/text.hpp"

namespace dgkit::governance {

CheckReport run_checks(const rdf::GraphStore& store, const ToolkitConfig& config,
                       const etl::Frame& dataset,
                       const std::map<std::string, std::string>& variable_column_map) {
    CheckReport report;
    for (const auto& rule : read_rules(store, config)) {
        if (!is_executable(rule.check.kind)) continue;
        if (rule.check.kind != CheckKind::MissingValue) {
            report.notes.push_back(rule.uri.value + ": " + to_string(rule.check.kind) +
                                   " is a transform, not a detector");
            continue;
        }
        for (const auto& target : rule.targets) {
            auto mapped = variable_column_map.find(target.value);
            if (mapped == variable_column_map.end()) {
                report.unmappable.push_back(target.value);
                continue;
            }
            auto idx = dataset.column_index(mapped->second);
            if (!idx) {
                report.unmappable.push_back(target.value + " (column '" + mapped->second +
                                            "' not in dataset)");
                continue;
            }
            CheckFinding finding{rule.uri, target, mapped->second, {}};
            for (std::size_t r = 0; r < dataset.rows.size(); ++r) {
                const etl::Cell& cell = dataset.rows[r][*idx];
                if (!cell || cell->empty()) finding.rows.push_back(r + 1);
            }
            if (!finding.rows.empty()) report.findings.push_back(std::move(finding));
        }
    }
    std::sort(report.unmappable.begin(), report.unmappable.end());
    return report;
}

std::string check_report_csv(const CheckReport& report) {
    std::vector<csv::Row> rows;
    rows.push_back({"rule", "target", "column", "row"});
    for (const auto& f : report.findings)
        for (auto r : f.rows)
            rows.push_back({f.rule.value, f.target.value, f.column, std::to_string(r)});
    for (const auto& u : report.unmappable) rows.push_back({"", u, "", ""});
    return csv::write(rows);
}

std::string check_report_text(const CheckReport& report) {
    std::string out;
    if (report.findings.empty()) out += "checks: no violations\n";
    for (const auto& f : report.findings) {
        std::vector<std::string> row_strs;
        for (auto r : f.rows) row_strs.push_back(std::to_string(r));
        out += "missing values in column " + f.column + " (rule " + f.rule.value + "): rows " +
               text::join(row_strs, ",") + "\n";
    }
    for (const auto& u : report.unmappable) out += "unmappable target: " + u + "\n";
    for (const auto& n : report.notes) out += "note: " + n + "\n";
    return out;
}

} // namespace dgkit::governance
