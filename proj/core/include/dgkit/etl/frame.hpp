#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dgkit::etl {

using Cell = std::optional<std::string>; // null models an empty cell

struct Frame {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    std::optional<std::size_t> column_index(std::string_view name) const;
};

enum class SourceFormat { Csv, Records };

// CSV per RFC 4180 (header row required) or a JSON array of flat records.
Frame extract(const std::string& path, SourceFormat format);
Frame extract(const std::string& path); // format from extension

Frame frame_from_csv(std::string_view text);
Frame frame_from_json_records(std::string_view text);
std::string frame_to_csv(const Frame& frame);

} // namespace dgkit::etl
