#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dgkit/config.hpp"
#include "dgkit/rdf/term.hpp"
#include "dgkit/uri/governed_uri.hpp"

namespace dgkit::etl {

struct ColumnSpec {
    enum class Role { PrimaryKey, Data };
    enum class Kind { ClassInstance, LiteralValue };

    std::string header;
    Role role = Role::Data;
    Kind kind = Kind::LiteralValue;
    std::optional<rdf::Iri> property; // relates key instances to values; absent for the key
    rdf::Iri class_iri;               // ClassInstance
    rdf::Iri datatype;                // LiteralValue
    std::size_t min_count = 0;
    std::optional<std::size_t> max_count = 1; // nullopt = unbounded
};

// How one tabular dataset renders into RDF: a primary-key column minting
// class instances, and per-column properties with cardinality/datatype/
// referential constraints.
struct TableShape {
    std::string name;
    uri::GovernedUri context; // prefix parts for minted instances (no entity)
    std::vector<ColumnSpec> columns;

    const ColumnSpec* primary_key() const; // nullptr unless exactly one
};

TableShape shape_from_json(std::string_view text, const ToolkitConfig& config);
TableShape shape_from_json_file(const std::string& path, const ToolkitConfig& config);

enum class ViolationKind { Structural, Cardinality, Datatype, Referential, UriSyntax, NewClass };
std::string to_string(ViolationKind kind);

struct Violation {
    std::optional<std::size_t> row; // 1-based data row; absent for shape-level findings
    std::string column;
    ViolationKind kind = ViolationKind::Structural;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    std::vector<std::string> warnings;

    bool ok() const { return violations.empty(); }
    void add(std::optional<std::size_t> row, std::string column, ViolationKind kind,
             std::string message);
};

std::string report_csv(const ValidationReport& report);
std::string report_text(const ValidationReport& report);

} // namespace dgkit::etl
