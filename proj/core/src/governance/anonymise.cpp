#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "dgkit/dates.hpp"
#include "dgkit/errors.hpp"
#include "dgkit/governance/governance.hpp"
#include "dgkit/rdf/vocab.hpp"
#include "dgkit/text.hpp"

namespace dgkit::governance {

using rdf::Iri;
using rdf::Literal;
using rdf::Quad;

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// [0, 1) built from the top 53 bits; stable across platforms
double unit_double(std::uint64_t h) {
    return static_cast<double>(h >> 11) * (1.0 / 9007199254740992.0);
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    std::string out = buf;
    while (!out.empty() && out.back() == '0') out.pop_back();
    if (!out.empty() && out.back() == '.') out.pop_back();
    return out;
}

std::optional<std::size_t> subject_column(const etl::Frame& frame) {
    for (std::size_t i = 0; i < frame.columns.size(); ++i)
        if (frame.columns[i] == "USUBJID" || frame.columns[i] == "subject_id") return i;
    return std::nullopt;
}

} // namespace

std::int64_t date_offset_days(std::uint64_t seed, const std::string& subject_id) {
    std::uint64_t h = splitmix64(seed ^ text::fnv1a(subject_id));
    return static_cast<std::int64_t>(h % 365) + 1; // [1, 365]
}

AnonymisationResult anonymise(const etl::Frame& dataset,
                              const std::vector<GovernanceRule>& rules, std::uint64_t seed,
                              const std::map<std::string, std::string>& target_columns,
                              const ToolkitConfig& config) {
    for (const auto& rule : rules)
        if (!is_executable(rule.check.kind))
            throw Error("anonymise accepts executable rule kinds only: " + rule.uri.value);

    AnonymisationResult result;
    result.frame = dataset;
    auto v = config.vocab();
    Iri graph{config.graph_base + "/graphs/governance"};
    auto subj_idx = subject_column(dataset);

    for (const auto& rule : rules) {
        for (const auto& target : rule.targets) {
            auto mapped = target_columns.find(target.value);
            if (mapped == target_columns.end()) continue;
            auto idx = result.frame.column_index(mapped->second);
            if (!idx) continue;
            const std::string& column = mapped->second;

            for (std::size_t r = 0; r < result.frame.rows.size(); ++r) {
                etl::Cell& cell = result.frame.rows[r][*idx];
                if (!cell) continue;
                switch (rule.check.kind) {
                case CheckKind::Suppression:
                    cell = config.redaction_token;
                    break;
                case CheckKind::NoiseAddition: {
                    char* end = nullptr;
                    double value = std::strtod(cell->c_str(), &end);
                    if (end != cell->c_str() + cell->size() || cell->empty())
                        throw Error("noise_addition target column '" + column +
                                    "' holds a non-numeric cell: '" + *cell + "'");
                    std::uint64_t h = splitmix64(seed ^ splitmix64(rule.check.seed) ^
                                                 text::fnv1a(column) ^
                                                 splitmix64(static_cast<std::uint64_t>(r)));
                    double noise = (unit_double(h) * 2.0 - 1.0) * rule.check.noise_scale;
                    cell = format_number(value + noise);
                    break;
                }
                case CheckKind::DateOffset: {
                    if (!subj_idx)
                        throw Error("date_offset needs a USUBJID or subject_id column");
                    const etl::Cell& subject = result.frame.rows[r][*subj_idx];
                    if (!subject) throw Error("date_offset: empty subject id in row " +
                                              std::to_string(r + 1));
                    auto dt = dates::parse_iso_datetime(*cell);
                    if (!dt)
                        throw Error("date_offset target column '" + column +
                                    "' holds a non-date cell: '" + *cell + "'");
                    std::int64_t offset = date_offset_days(seed, *subject);
                    dt->date = dates::add_days(dt->date, offset);
                    cell = dates::format_iso(*dt);
                    break;
                }
                case CheckKind::MissingValue:
                case CheckKind::Custom:
                    break; // detectors and customs do not transform
                }
            }

            if (rule.check.kind == CheckKind::Suppression ||
                rule.check.kind == CheckKind::NoiseAddition ||
                rule.check.kind == CheckKind::DateOffset) {
                // audit records the touch, never the values
                result.audit.push_back({rule.uri, v.touched_column(), Literal{column}, graph});
                result.audit.push_back({rule.uri, v.applied_rule(),
                                        Literal{to_string(rule.check.kind)}, graph});
            }
        }
    }
    return result;
}

} // namespace dgkit::governance
