#include "dgkit/lineage/interpreter.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "dgkit/csv.hpp"
#include "dgkit/errors.hpp"
#include "dgkit/text.hpp"

namespace dgkit::lineage {

namespace {

bool parse_number(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

std::string format_day_number(std::int64_t days, std::optional<dates::TimeOfDay> time) {
    if (!time) return std::to_string(days);
    double frac =
        (time->hour * 3600.0 + time->minute * 60.0 + time->second) / 86400.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", static_cast<double>(days) + frac);
    std::string out = buf;
    while (!out.empty() && out.back() == '0') out.pop_back();
    if (!out.empty() && out.back() == '.') out.pop_back();
    return out;
}

dates::Date date_portion(const std::string& cell, const std::string& what) {
    double numeric = 0;
    if (parse_number(cell, numeric))
        return dates::from_epoch_days(static_cast<std::int64_t>(std::floor(numeric)));
    if (auto dt = dates::parse_iso_datetime(cell)) return dt->date;
    throw Error("unparseable " + what + " cell: '" + cell + "'");
}

} // namespace

std::int64_t study_day(const dates::Date& event, const dates::Date& start) {
    std::int64_t diff = dates::to_epoch_days(event) - dates::to_epoch_days(start);
    return diff >= 0 ? diff + 1 : diff;
}

ResolvedDerivation resolve_derivation(const UcmModel& model, const rdf::Iri& derivation) {
    auto d = model.read_derivation(derivation);
    if (!d) throw Error("not a registered derivation: " + derivation.value);
    ResolvedDerivation resolved{std::move(*d), {}, {}};
    auto name_of = [&](const rdf::Iri& var) {
        if (auto name = model.variable_name(var)) return *name;
        throw Error("variable has no name token: " + var.value);
    };
    for (const auto& in : resolved.derivation.inputs)
        resolved.input_names.push_back(name_of(in));
    for (const auto& out : resolved.derivation.outputs)
        resolved.output_names.push_back(name_of(out));
    return resolved;
}

ClinicalRecord execute_derivation(const ResolvedDerivation& d, ClinicalRecord record,
                                  const ExecutionContext& ctx) {
    for (const auto& name : d.input_names)
        if (!record.cells.contains(name))
            throw Error("record is missing input column '" + name + "' for " +
                        d.derivation.uri.value);

    auto cell = [&](const std::string& name) -> const Cell& { return record.cells.at(name); };
    auto set_outputs = [&](const Cell& value) {
        for (const auto& name : d.output_names) record.cells[name] = value;
    };

    switch (d.derivation.rule_kind) {
    case RuleKind::CopyElement: {
        set_outputs(cell(d.input_names[0]));
        break;
    }
    case RuleKind::Dtc: {
        // one input carries the date, the other the time; roles are
        // determined by parsing, not input order
        Cell a = cell(d.input_names[0]);
        Cell b = cell(d.input_names[1]);
        Cell date, time;
        auto classify = [&](const Cell& c) {
            if (!c) return;
            if (dates::parse_iso_date(*c)) date = c;
            else if (dates::parse_iso_time(*c)) time = c;
            else throw Error("unparseable date/time cell: '" + *c + "'");
        };
        classify(a);
        classify(b);
        if (!date) {
            set_outputs(std::nullopt);
            break;
        }
        set_outputs(time ? Cell{*date + "T" + *time} : date);
        break;
    }
    case RuleKind::Dtn: {
        Cell in = cell(d.input_names[0]);
        if (!in) {
            set_outputs(std::nullopt);
            break;
        }
        auto dt = dates::parse_iso_datetime(*in);
        if (!dt) throw Error("unparseable date/time cell: '" + *in + "'");
        set_outputs(Cell{format_day_number(dates::to_epoch_days(dt->date), dt->time)});
        break;
    }
    case RuleKind::StudyDay: {
        Cell in = cell(d.input_names[0]);
        if (!in) {
            set_outputs(std::nullopt);
            break;
        }
        dates::Date event = date_portion(*in, "event date");

        std::optional<dates::Date> start;
        if (!ctx.study_day_ref_var.empty()) {
            auto it = record.cells.find(ctx.study_day_ref_var);
            if (it != record.cells.end() && it->second)
                start = date_portion(*it->second, "reference start");
        }
        if (!start) start = ctx.reference_start;
        if (!start)
            throw Error("study-day derivation needs a reference start date (column '" +
                        ctx.study_day_ref_var + "' or an explicit start)");
        set_outputs(Cell{std::to_string(study_day(event, *start))});
        break;
    }
    case RuleKind::Opaque:
        throw Error("opaque derivation cannot be executed: " + d.derivation.uri.value +
                    " (rule: " + d.derivation.rule_text + ")");
    }
    return record;
}

std::vector<ClinicalRecord> execute_pipeline(const UcmModel& model,
                                             std::vector<ClinicalRecord> records,
                                             const rdf::Iri& target,
                                             const ExecutionContext& ctx) {
    if (!model.is_registered_variable(target))
        throw Error("not a registered variable: " + target.value);
    auto target_name = model.variable_name(target);
    if (!target_name) throw Error("target variable has no name token: " + target.value);

    // derivations reachable backward from the target
    auto voc = model.config().vocab();
    const auto& store = model.store();
    std::set<std::string> seen_vars;
    std::vector<rdf::Iri> frontier{target};
    std::vector<rdf::Iri> derivation_uris;
    std::set<std::string> seen_derivs;
    while (!frontier.empty()) {
        rdf::Iri var = frontier.back();
        frontier.pop_back();
        if (!seen_vars.insert(var.value).second) continue;
        for (const auto& q :
             store.match(std::nullopt, voc.has_output(), rdf::Term{var}, std::nullopt)) {
            auto* d = std::get_if<rdf::Iri>(&q.subject);
            if (!d || !seen_derivs.insert(d->value).second) continue;
            derivation_uris.push_back(*d);
            if (auto deriv = model.read_derivation(*d))
                for (const auto& in : deriv->inputs) frontier.push_back(in);
        }
    }
    std::sort(derivation_uris.begin(), derivation_uris.end());

    std::vector<ResolvedDerivation> executable;
    for (const auto& uri : derivation_uris) {
        auto resolved = resolve_derivation(model, uri);
        if (resolved.derivation.rule_kind != RuleKind::Opaque)
            executable.push_back(std::move(resolved));
    }

    for (auto& record : records) {
        std::set<std::string> applied;
        bool progress = true;
        while (!record.cells.contains(*target_name) && progress) {
            progress = false;
            for (const auto& d : executable) {
                if (applied.contains(d.derivation.uri.value)) continue;
                bool ready = std::all_of(d.input_names.begin(), d.input_names.end(),
                                         [&](const std::string& name) {
                                             return record.cells.contains(name);
                                         });
                if (!ready) continue;
                record = execute_derivation(d, std::move(record), ctx);
                applied.insert(d.derivation.uri.value);
                progress = true;
            }
        }
        if (!record.cells.contains(*target_name))
            throw Error("no producing path to " + target.value +
                        " from the record's columns (subject " + record.subject_id + ")");
    }
    return records;
}

std::vector<ClinicalRecord> records_from_csv(std::string_view csv_text,
                                             std::vector<std::string>& column_order) {
    auto rows = csv::parse(csv_text);
    if (rows.empty()) throw Error("records CSV is empty");
    const auto& header = rows.front();
    std::size_t id_col = header.size();
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == "USUBJID" || header[i] == "subject_id") {
            id_col = i;
            break;
        }
    if (id_col == header.size())
        throw Error("records CSV needs a USUBJID or subject_id column");

    column_order = header;
    std::vector<ClinicalRecord> records;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != header.size())
            throw Error("records CSV row " + std::to_string(r + 1) + " has " +
                        std::to_string(row.size()) + " cells, expected " +
                        std::to_string(header.size()));
        ClinicalRecord record;
        record.subject_id = row[id_col];
        if (record.subject_id.empty())
            throw Error("records CSV row " + std::to_string(r + 1) + ": empty subject id");
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (c == id_col) continue;
            record.cells[header[c]] = row[c].empty() ? Cell{} : Cell{row[c]};
        }
        records.push_back(std::move(record));
    }
    return records;
}

std::string records_to_csv(const std::vector<ClinicalRecord>& records,
                           const std::vector<std::string>& column_order) {
    // original columns first, newly derived ones appended in sorted order
    std::set<std::string> known(column_order.begin(), column_order.end());
    std::set<std::string> extra;
    for (const auto& r : records)
        for (const auto& [name, _] : r.cells)
            if (!known.contains(name)) extra.insert(name);

    std::vector<std::string> columns = column_order;
    bool has_id = std::find(columns.begin(), columns.end(), "USUBJID") != columns.end() ||
                  std::find(columns.begin(), columns.end(), "subject_id") != columns.end();
    if (!has_id) columns.insert(columns.begin(), "subject_id");
    columns.insert(columns.end(), extra.begin(), extra.end());

    std::vector<csv::Row> rows;
    rows.push_back(columns);
    for (const auto& r : records) {
        csv::Row row;
        for (const auto& col : columns) {
            if (col == "USUBJID" || col == "subject_id") {
                row.push_back(r.subject_id);
                continue;
            }
            auto it = r.cells.find(col);
            row.push_back(it != r.cells.end() && it->second ? *it->second : "");
        }
        rows.push_back(std::move(row));
    }
    return csv::write(rows);
}

} // namespace dgkit::lineage
