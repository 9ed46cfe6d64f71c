#include "dgkit/etl/shape.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dgkit/csv.hpp"
#include "dgkit/errors.hpp"

namespace dgkit::etl {

const ColumnSpec* TableShape::primary_key() const {
    const ColumnSpec* found = nullptr;
    for (const auto& col : columns) {
        if (col.role != ColumnSpec::Role::PrimaryKey) continue;
        if (found) return nullptr;
        found = &col;
    }
    return found;
}

std::string to_string(ViolationKind kind) {
    switch (kind) {
    case ViolationKind::Structural: return "structural";
    case ViolationKind::Cardinality: return "cardinality";
    case ViolationKind::Datatype: return "datatype";
    case ViolationKind::Referential: return "referential";
    case ViolationKind::UriSyntax: return "uri-syntax";
    case ViolationKind::NewClass: return "new-class";
    }
    return "structural";
}

void ValidationReport::add(std::optional<std::size_t> row, std::string column,
                           ViolationKind kind, std::string message) {
    violations.push_back(Violation{row, std::move(column), kind, std::move(message)});
}

TableShape shape_from_json(std::string_view text, const ToolkitConfig& config) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("shape JSON: ") + e.what());
    }

    TableShape shape;
    shape.name = j.value("name", "dataset");
    shape.context = config.context_parts();
    if (j.contains("context")) {
        const auto& c = j.at("context");
        shape.context.business_domain = c.value("business_domain", shape.context.business_domain);
        shape.context.business_subdomain =
            c.value("business_subdomain", shape.context.business_subdomain);
        shape.context.system_of_record =
            c.value("system_of_record", shape.context.system_of_record);
        if (c.contains("timestamp")) {
            auto ts = uri::VersionOrDate::parse(c.at("timestamp").get<std::string>());
            if (!ts) throw Error("shape context has a bad timestamp");
            shape.context.timestamp = *ts;
        }
        if (c.contains("type_segment"))
            shape.context.type_segment = c.at("type_segment").get<std::string>();
    }

    auto parse_column = [&](const nlohmann::json& item) {
        ColumnSpec col;
        col.header = item.at("header").get<std::string>();
        std::string role = item.value("role", "data");
        col.role = role == "primary_key" ? ColumnSpec::Role::PrimaryKey : ColumnSpec::Role::Data;
        std::string kind = item.value("kind", "literal");
        col.kind = (kind == "class_instance") ? ColumnSpec::Kind::ClassInstance
                                              : ColumnSpec::Kind::LiteralValue;
        if (item.contains("property"))
            col.property = rdf::Iri{item.at("property").get<std::string>()};
        if (item.contains("class")) col.class_iri = rdf::Iri{item.at("class").get<std::string>()};
        if (item.contains("datatype")) {
            std::string dt = item.at("datatype").get<std::string>();
            // allow the compact xsd:NAME spelling
            if (dt.rfind("xsd:", 0) == 0) dt = rdf::xsd::ns + dt.substr(4);
            col.datatype = rdf::Iri{dt};
        } else if (col.kind == ColumnSpec::Kind::LiteralValue) {
            col.datatype = rdf::xsd::string_();
        }
        col.min_count = item.value("min_count", 0u);
        if (item.contains("max_count") && !item.at("max_count").is_null())
            col.max_count = item.at("max_count").get<std::size_t>();
        else if (!item.contains("max_count"))
            col.max_count = 1;
        else
            col.max_count.reset(); // explicit null = unbounded
        return col;
    };

    if (j.contains("primary_key")) {
        ColumnSpec pk = parse_column(j.at("primary_key"));
        pk.role = ColumnSpec::Role::PrimaryKey;
        pk.kind = ColumnSpec::Kind::ClassInstance;
        pk.min_count = 1;
        shape.columns.push_back(std::move(pk));
    }
    for (const auto& item : j.value("columns", nlohmann::json::array()))
        shape.columns.push_back(parse_column(item));
    if (shape.columns.empty()) throw Error("shape declares no columns");
    return shape;
}

TableShape shape_from_json_file(const std::string& path, const ToolkitConfig& config) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open shape file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return shape_from_json(ss.str(), config);
}

std::string report_csv(const ValidationReport& report) {
    std::vector<csv::Row> rows;
    rows.push_back({"row", "column", "kind", "message"});
    for (const auto& v : report.violations)
        rows.push_back({v.row ? std::to_string(*v.row) : "", v.column, to_string(v.kind),
                        v.message});
    return csv::write(rows);
}

std::string report_text(const ValidationReport& report) {
    std::string out;
    if (report.ok()) {
        out = "validation: OK (no findings)\n";
    } else {
        out = "validation: " + std::to_string(report.violations.size()) + " finding(s)\n";
        for (const auto& v : report.violations) {
            out += "  [" + to_string(v.kind) + "] ";
            if (v.row) out += "row " + std::to_string(*v.row) + " ";
            if (!v.column.empty()) out += "column " + v.column + " ";
            out += "- " + v.message + "\n";
        }
    }
    for (const auto& w : report.warnings) out += "  (warning) " + w + "\n";
    return out;
}

} // namespace dgkit::etl
