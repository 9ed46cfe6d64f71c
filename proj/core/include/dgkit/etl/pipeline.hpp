#pragma once

#include <set>
#include <string>
#include <vector>

#include "dgkit/config.hpp"
#include "dgkit/etl/frame.hpp"
#include "dgkit/etl/shape.hpp"
#include "dgkit/etl/transforms.hpp"
#include "dgkit/rdf/store.hpp"

namespace dgkit::etl {

// Shape-internal consistency: one primary key, properties present,
// IRI syntax, datatypes known (unknown ones pass with a warning).
ValidationReport validate_structure(const TableShape& shape, const ToolkitConfig& config);

// Per-row constraint checks against the shape and the store: cardinality,
// datatype lexical forms, referential integrity, new-class detection.
// Assumes a structurally clean shape; columns flagged by validate_structure
// are skipped rather than trusted.
ValidationReport validate_data(const Frame& frame, const TableShape& shape,
                               const rdf::GraphStore& store, const ToolkitConfig& config,
                               bool record_level = true);

// Structure findings plus data findings in one report.
ValidationReport validate_all(const Frame& frame, const TableShape& shape,
                              const rdf::GraphStore& store, const ToolkitConfig& config,
                              bool record_level = true);

// Conformant quads for the frame; rows listed in `skip_rows` are excluded.
std::vector<rdf::Quad> emit_rdf(const Frame& frame, const TableShape& shape,
                                const rdf::GraphStore& store, const ToolkitConfig& config,
                                const std::set<std::size_t>& skip_rows = {});

struct PipelineResult {
    ValidationReport report;
    rdf::LoadReport loaded;
    std::vector<rdf::Quad> provenance;
    bool did_load = false;
    std::size_t rows_skipped = 0;
};

// extract -> transform -> validate -> emit -> load, recording the run as
// provenance quads. Without `force` a nonempty report aborts before load;
// with it, violating rows are skipped row-wise.
PipelineResult run_pipeline(rdf::GraphStore& store, const ToolkitConfig& config,
                            const std::string& source_path,
                            const std::vector<ValueTransform>& transforms,
                            const TableShape& shape, bool force = false,
                            bool record_level = true);

} // namespace dgkit::etl
