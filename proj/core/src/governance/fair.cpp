#include <algorithm>

#include "dgkit/csv.hpp"
#include "dgkit/errors.hpp"
#include "dgkit/governance/governance.hpp"
#include "dgkit/text.hpp"

namespace dgkit::governance {

using rdf::Iri;
using rdf::Term;

std::vector<FairRow> fair_report(const rdf::GraphStore& store, const ToolkitConfig& config,
                                 const std::vector<Iri>& datasets) {
    std::vector<FairRow> rows;
    for (const auto& dataset : datasets) {
        if (store.match(Term{dataset}, std::nullopt, std::nullopt, std::nullopt).empty())
            throw Error("unknown dataset: " + dataset.value);

        FairRow row;
        row.dataset = dataset;
        row.findable = uri::validate_uri(dataset, config.registry).ok();
        auto has = [&](const std::string& predicate) {
            return !store.match(Term{dataset}, Iri{predicate}, std::nullopt, std::nullopt)
                        .empty();
        };
        row.accessible = has(config.facet_access);
        row.interoperable = has(config.facet_standard);
        bool has_license = has(config.facet_license);
        bool has_provenance = has(config.facet_provenance);
        row.reusable = has_license && has_provenance;

        if (!row.findable) row.gaps.push_back("governed-uri");
        if (!row.accessible) row.gaps.push_back("access");
        if (!row.interoperable) row.gaps.push_back("standard");
        if (!has_license) row.gaps.push_back("license");
        if (!has_provenance) row.gaps.push_back("provenance");
        row.score = int(row.findable) + int(row.accessible) + int(row.interoperable) +
                    int(row.reusable);
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(),
              [](const FairRow& a, const FairRow& b) { return a.dataset < b.dataset; });
    return rows;
}

std::string fair_csv(const std::vector<FairRow>& rows) {
    std::vector<csv::Row> out;
    out.push_back({"dataset", "findable", "accessible", "interoperable", "reusable", "score",
                   "gaps"});
    auto b = [](bool v) { return v ? std::string("true") : std::string("false"); };
    for (const auto& r : rows)
        out.push_back({r.dataset.value, b(r.findable), b(r.accessible), b(r.interoperable),
                       b(r.reusable), std::to_string(r.score), text::join(r.gaps, "|")});
    return csv::write(out);
}

std::string fair_text(const std::vector<FairRow>& rows) {
    std::string out = "FAIR metrics:\n";
    for (const auto& r : rows) {
        out += "  " + r.dataset.value + "  F=" + (r.findable ? "T" : "F") +
               " A=" + (r.accessible ? "T" : "F") + " I=" + (r.interoperable ? "T" : "F") +
               " R=" + (r.reusable ? "T" : "F") + "  score " + std::to_string(r.score) + "/4";
        if (!r.gaps.empty()) out += "  gaps: " + text::join(r.gaps, ", ");
        out += "\n";
    }
    if (rows.empty()) out += "  (no datasets)\n";
    return out;
}

} // namespace dgkit::governance
