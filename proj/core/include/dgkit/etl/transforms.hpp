#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dgkit/etl/frame.hpp"

namespace dgkit::etl {

// Cell rewrites applied left to right; Computed appends a new column built
// from an expression over the row (concat of columns and string literals).
struct ValueTransform {
    enum class Kind { Trim, CaseFold, ParseNumber, ParseDate, Computed };
    Kind kind = Kind::Trim;
    std::string target_column;
    std::string date_format; // ParseDate, e.g. "YYYY-MM-DD" or "DD/MM/YYYY"
    std::string expression;  // Computed, e.g. concat(AEENDAT, "T", AEENTIM)
};

struct TransformIssue {
    std::size_t row; // 1-based data row
    std::string column;
    std::string message;
};

struct TransformResult {
    Frame frame;
    std::vector<TransformIssue> issues; // parse failures; cells become null
};

TransformResult apply_transforms(Frame frame, const std::vector<ValueTransform>& transforms);

std::vector<ValueTransform> transforms_from_json(std::string_view text);
std::vector<ValueTransform> transforms_from_json_file(const std::string& path);

// Stable digest over the transform list, recorded in pipeline provenance.
std::string transforms_digest(const std::vector<ValueTransform>& transforms);

} // namespace dgkit::etl
