#include "dgkit/etl/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "dgkit/dates.hpp"
#include "dgkit/errors.hpp"
#include "dgkit/rdf/vocab.hpp"
#include "dgkit/text.hpp"

namespace dgkit::etl {

using rdf::Iri;
using rdf::Literal;
using rdf::Quad;
using rdf::Term;
namespace vocab = rdf::vocab;

namespace {

const std::set<std::string>& known_datatypes() {
    static const std::set<std::string> known = {
        rdf::xsd::string_().value, rdf::xsd::integer().value, rdf::xsd::decimal().value,
        rdf::xsd::date().value,    rdf::xsd::date_time().value, rdf::xsd::boolean().value,
    };
    return known;
}

bool lexical_ok(const std::string& value, const std::string& datatype) {
    if (datatype == rdf::xsd::string_().value) return true;
    if (datatype == rdf::xsd::integer().value) {
        std::size_t i = (value.size() && (value[0] == '+' || value[0] == '-')) ? 1 : 0;
        if (i >= value.size()) return false;
        for (; i < value.size(); ++i)
            if (value[i] < '0' || value[i] > '9') return false;
        return true;
    }
    if (datatype == rdf::xsd::decimal().value) {
        char* end = nullptr;
        std::strtod(value.c_str(), &end);
        if (end != value.c_str() + value.size() || value.empty()) return false;
        return value.find_first_of("eE") == std::string::npos;
    }
    if (datatype == rdf::xsd::date().value) return dates::parse_iso_date(value).has_value();
    if (datatype == rdf::xsd::date_time().value) {
        auto dt = dates::parse_iso_datetime(value);
        return dt.has_value() && dt->time.has_value();
    }
    if (datatype == rdf::xsd::boolean().value)
        return value == "true" || value == "false" || value == "0" || value == "1";
    return true; // unknown datatypes pass through (warned at structure time)
}

bool looks_like_iri(const std::string& value) {
    return value.find("://") != std::string::npos;
}

// label or IRI -> instance of `cls` in the store
struct Resolver {
    const rdf::GraphStore& store;

    bool typed_as(const Iri& instance, const Iri& cls) const {
        return !store.match(Term{instance}, vocab::rdf_type(), Term{cls}, std::nullopt).empty();
    }

    bool exists(const Iri& instance) const {
        return !store.match(Term{instance}, std::nullopt, std::nullopt, std::nullopt).empty();
    }

    std::optional<Iri> by_label(const std::string& label, const Iri& cls) const {
        for (const auto& q :
             store.match(std::nullopt, vocab::skos_pref_label(), Term{Literal{label}},
                         std::nullopt)) {
            auto* subject = std::get_if<Iri>(&q.subject);
            if (subject && typed_as(*subject, cls)) return *subject;
        }
        return std::nullopt;
    }
};

std::vector<std::string> split_multi(const std::string& value, const std::string& delimiter) {
    if (delimiter.empty()) return {value};
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        auto pos = value.find(delimiter, start);
        if (pos == std::string::npos) {
            parts.push_back(value.substr(start));
            break;
        }
        parts.push_back(value.substr(start, pos - start));
        start = pos + delimiter.size();
    }
    return parts;
}

// columns that survive structural validation and exist in the frame
std::vector<const ColumnSpec*> usable_columns(const Frame& frame, const TableShape& shape) {
    std::vector<const ColumnSpec*> out;
    for (const auto& col : shape.columns) {
        if (col.role == ColumnSpec::Role::Data && !col.property) continue;
        if (!frame.column_index(col.header)) continue;
        out.push_back(&col);
    }
    return out;
}

} // namespace

ValidationReport validate_structure(const TableShape& shape, const ToolkitConfig& config) {
    ValidationReport report;

    std::size_t pk_count = 0;
    for (const auto& col : shape.columns)
        if (col.role == ColumnSpec::Role::PrimaryKey) ++pk_count;
    if (pk_count != 1)
        report.add(std::nullopt, "", ViolationKind::Structural,
                   "shape must declare exactly one primary key column (found " +
                       std::to_string(pk_count) + ")");

    auto check_iri = [&](const Iri& iri, const std::string& column, const char* what) {
        if (!rdf::is_valid_iri(iri.value)) {
            report.add(std::nullopt, column, ViolationKind::UriSyntax,
                       std::string(what) + " is not a well-formed IRI: '" + iri.value + "'");
            return;
        }
        if (text::starts_with(iri.value, config.registry.authority + "/")) {
            auto outcome = uri::validate_uri(iri, config.registry);
            if (!outcome.ok())
                report.add(std::nullopt, column, ViolationKind::UriSyntax,
                           std::string(what) + " fails the governed grammar: " + iri.value +
                               " (" + outcome.violations.front() + ")");
        }
    };

    for (const auto& col : shape.columns) {
        if (col.role == ColumnSpec::Role::PrimaryKey) {
            if (col.kind != ColumnSpec::Kind::ClassInstance)
                report.add(std::nullopt, col.header, ViolationKind::Structural,
                           "primary key must instantiate a class");
            if (!col.class_iri.value.empty()) check_iri(col.class_iri, col.header, "key class");
            else
                report.add(std::nullopt, col.header, ViolationKind::Structural,
                           "primary key declares no class");
            continue;
        }
        if (!col.property) {
            report.add(std::nullopt, col.header, ViolationKind::Structural,
                       "non-key column '" + col.header + "' declares no property");
        } else {
            check_iri(*col.property, col.header, "property");
        }
        if (col.kind == ColumnSpec::Kind::ClassInstance) {
            if (col.class_iri.value.empty())
                report.add(std::nullopt, col.header, ViolationKind::Structural,
                           "class-instance column '" + col.header + "' declares no class");
            else
                check_iri(col.class_iri, col.header, "class");
        } else {
            if (col.datatype.value.empty())
                report.add(std::nullopt, col.header, ViolationKind::Structural,
                           "literal column '" + col.header + "' declares no datatype");
            else if (!rdf::is_valid_iri(col.datatype.value))
                report.add(std::nullopt, col.header, ViolationKind::UriSyntax,
                           "datatype is not a well-formed IRI: '" + col.datatype.value + "'");
            else if (!known_datatypes().contains(col.datatype.value))
                report.warnings.push_back("column '" + col.header + "': datatype " +
                                          col.datatype.value +
                                          " has no lexical check, values pass through");
        }
        if (col.max_count && col.min_count > *col.max_count)
            report.add(std::nullopt, col.header, ViolationKind::Structural,
                       "min_count exceeds max_count");
    }
    return report;
}

ValidationReport validate_data(const Frame& frame, const TableShape& shape,
                               const rdf::GraphStore& store, const ToolkitConfig& config,
                               bool record_level) {
    ValidationReport report;
    Resolver resolver{store};

    for (const auto& col : shape.columns) {
        if (!frame.column_index(col.header))
            report.add(std::nullopt, col.header, ViolationKind::Structural,
                       "shape column '" + col.header + "' is not in the dataset");
    }

    for (const auto* colp : usable_columns(frame, shape)) {
        const ColumnSpec& col = *colp;
        std::size_t idx = *frame.column_index(col.header);
        for (std::size_t r = 0; r < frame.rows.size(); ++r) {
            const Cell& cell = frame.rows[r][idx];
            std::size_t row_no = r + 1;

            if (col.role == ColumnSpec::Role::PrimaryKey) {
                if (!cell) {
                    report.add(row_no, col.header, ViolationKind::Cardinality,
                               "primary key cell is empty");
                } else if (!uri::is_token(*cell)) {
                    report.add(row_no, col.header, ViolationKind::UriSyntax,
                               "primary key '" + *cell +
                                   "' cannot mint a governed URI (illegal characters)");
                }
                continue;
            }

            std::vector<std::string> parts;
            if (cell) {
                for (auto& part : split_multi(*cell, config.multi_value_delimiter)) {
                    std::string trimmed = text::trim(part);
                    if (!trimmed.empty()) parts.push_back(trimmed);
                }
            }

            if (parts.size() < col.min_count ||
                (col.max_count && parts.size() > *col.max_count)) {
                std::string bound = col.max_count ? std::to_string(*col.max_count) : "unbounded";
                report.add(row_no, col.header, ViolationKind::Cardinality,
                           "value count " + std::to_string(parts.size()) + " outside [" +
                               std::to_string(col.min_count) + ", " + bound + "]");
                continue;
            }

            for (const auto& part : parts) {
                if (col.kind == ColumnSpec::Kind::LiteralValue) {
                    if (record_level && !lexical_ok(part, col.datatype.value))
                        report.add(row_no, col.header, ViolationKind::Datatype,
                                   "'" + part + "' is not a valid " + col.datatype.value);
                    continue;
                }
                // class instance
                if (looks_like_iri(part)) {
                    if (!rdf::is_valid_iri(part)) {
                        report.add(row_no, col.header, ViolationKind::UriSyntax,
                                   "'" + part + "' is not a well-formed IRI");
                    } else if (!resolver.exists(Iri{part}) ||
                               !resolver.typed_as(Iri{part}, col.class_iri)) {
                        report.add(row_no, col.header, ViolationKind::Referential,
                                   "referenced instance " + part + " is absent or not typed " +
                                       col.class_iri.value);
                    }
                    continue;
                }
                if (!resolver.by_label(part, col.class_iri))
                    report.add(row_no, col.header, ViolationKind::NewClass,
                               "'" + part + "' is not a known instance of " +
                                   col.class_iri.value + " (new class candidate)");
            }
        }
    }

    // report rows in (row, column) order for stable output
    std::stable_sort(report.violations.begin(), report.violations.end(),
                     [](const Violation& a, const Violation& b) {
                         std::size_t ra = a.row.value_or(0), rb = b.row.value_or(0);
                         if (ra != rb) return ra < rb;
                         return a.column < b.column;
                     });
    return report;
}

ValidationReport validate_all(const Frame& frame, const TableShape& shape,
                              const rdf::GraphStore& store, const ToolkitConfig& config,
                              bool record_level) {
    ValidationReport report = validate_structure(shape, config);
    ValidationReport data = validate_data(frame, shape, store, config, record_level);
    report.violations.insert(report.violations.end(), data.violations.begin(),
                             data.violations.end());
    report.warnings.insert(report.warnings.end(), data.warnings.begin(), data.warnings.end());
    return report;
}

std::vector<Quad> emit_rdf(const Frame& frame, const TableShape& shape,
                           const rdf::GraphStore& store, const ToolkitConfig& config,
                           const std::set<std::size_t>& skip_rows) {
    const ColumnSpec* pk = shape.primary_key();
    if (!pk) throw Error("emit_rdf needs a structurally valid shape (one primary key)");
    auto pk_idx = frame.column_index(pk->header);
    if (!pk_idx) throw Error("primary key column '" + pk->header + "' is not in the dataset");

    Resolver resolver{store};
    Iri graph{config.default_graph};
    std::vector<Quad> quads;

    for (std::size_t r = 0; r < frame.rows.size(); ++r) {
        if (skip_rows.contains(r + 1)) continue;
        const Cell& key_cell = frame.rows[r][*pk_idx];
        if (!key_cell) continue;

        uri::GovernedUri parts = shape.context;
        parts.entity_path = {*key_cell};
        Iri instance = uri::build_uri(parts, config.registry); // minting failures surface here
        quads.push_back({instance, vocab::rdf_type(), pk->class_iri, graph});

        for (const auto* colp : usable_columns(frame, shape)) {
            const ColumnSpec& col = *colp;
            if (col.role == ColumnSpec::Role::PrimaryKey) continue;
            const Cell& cell = frame.rows[r][*frame.column_index(col.header)];
            if (!cell) continue;
            for (auto& raw : split_multi(*cell, config.multi_value_delimiter)) {
                std::string part = text::trim(raw);
                if (part.empty()) continue;
                Term object;
                if (col.kind == ColumnSpec::Kind::ClassInstance) {
                    if (looks_like_iri(part)) {
                        object = Iri{part};
                    } else if (auto resolved = resolver.by_label(part, col.class_iri)) {
                        object = *resolved;
                    } else {
                        continue; // unresolved reference never reaches the store
                    }
                } else {
                    object = Literal{part, col.datatype};
                }
                quads.push_back({instance, *col.property, object, graph});
            }
        }
    }
    return quads;
}

PipelineResult run_pipeline(rdf::GraphStore& store, const ToolkitConfig& config,
                            const std::string& source_path,
                            const std::vector<ValueTransform>& transforms,
                            const TableShape& shape, bool force, bool record_level) {
    PipelineResult result;

    Frame frame = extract(source_path);
    TransformResult transformed = apply_transforms(std::move(frame), transforms);
    for (const auto& issue : transformed.issues)
        result.report.add(issue.row, issue.column, ViolationKind::Datatype,
                          "transform: " + issue.message);

    ValidationReport validation =
        validate_all(transformed.frame, shape, store, config, record_level);
    result.report.violations.insert(result.report.violations.end(),
                                    validation.violations.begin(), validation.violations.end());
    result.report.warnings = validation.warnings;

    if (!result.report.ok() && !force) return result;

    std::set<std::size_t> skip;
    for (const auto& v : result.report.violations)
        if (v.row) skip.insert(*v.row);
    result.rows_skipped = skip.size();

    std::vector<Quad> quads = emit_rdf(transformed.frame, shape, store, config, skip);
    result.loaded = store.load(quads, source_path);
    result.did_load = true;

    // the run itself becomes knowledge: activity node linking source, shape,
    // transform digest, time and output graph
    auto v = config.vocab();
    std::string digest = text::hex(text::fnv1a(
        source_path + "\x1f" + shape.name + "\x1f" + transforms_digest(transforms)));
    Iri activity = config.mint("activity", "etl-" + digest);
    Iri prov_graph{config.graph_base + "/graphs/provenance"};

    auto now = std::chrono::system_clock::now();
    auto days = std::chrono::floor<std::chrono::days>(now);
    auto tod = std::chrono::duration_cast<std::chrono::seconds>(now - days);
    dates::Date today = dates::from_epoch_days(days.time_since_epoch().count());
    dates::TimeOfDay time{static_cast<unsigned>(tod.count() / 3600),
                          static_cast<unsigned>((tod.count() / 60) % 60),
                          static_cast<unsigned>(tod.count() % 60), true};
    std::string stamp = dates::format_iso(dates::DateTime{today, time});

    result.provenance = {
        {activity, vocab::rdf_type(), v.activity_class(), prov_graph},
        {activity, v.used(), Literal{source_path}, prov_graph},
        {activity, v.used_shape(), Literal{shape.name}, prov_graph},
        {activity, v.transform_digest(), Literal{transforms_digest(transforms)}, prov_graph},
        {activity, v.at_time(), Literal{stamp, rdf::xsd::date_time()}, prov_graph},
        {activity, v.generated(), result.loaded.graph, prov_graph},
    };
    for (const auto& q : result.provenance) store.insert(q);
    return result;
}

} // namespace dgkit::etl
