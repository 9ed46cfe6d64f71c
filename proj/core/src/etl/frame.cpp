#include "dgkit/etl/frame.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dgkit/csv.hpp"
#include "dgkit/errors.hpp"
#include "dgkit/text.hpp"

namespace dgkit::etl {

std::optional<std::size_t> Frame::column_index(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    return std::nullopt;
}

Frame frame_from_csv(std::string_view text) {
    auto rows = csv::parse(text);
    if (rows.empty()) throw Error("dataset is empty (no header row)");
    Frame frame;
    frame.columns = rows.front();
    std::set<std::string> seen;
    for (const auto& col : frame.columns) {
        if (col.empty()) throw Error("empty column name in header");
        if (!seen.insert(col).second) throw Error("duplicate header column '" + col + "'");
    }
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != frame.columns.size())
            throw Error("ragged row " + std::to_string(r) + ": has " +
                        std::to_string(rows[r].size()) + " cells, expected " +
                        std::to_string(frame.columns.size()));
        std::vector<Cell> cells;
        cells.reserve(rows[r].size());
        for (auto& value : rows[r])
            cells.push_back(value.empty() ? Cell{} : Cell{std::move(value)});
        frame.rows.push_back(std::move(cells));
    }
    return frame;
}

Frame frame_from_json_records(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("records JSON: ") + e.what());
    }
    if (!doc.is_array()) throw Error("records JSON must be an array of objects");

    Frame frame;
    std::set<std::string> seen;
    for (const auto& record : doc) {
        if (!record.is_object()) throw Error("records JSON must contain flat objects");
        for (const auto& [key, _] : record.items()) {
            if (seen.insert(key).second) frame.columns.push_back(key);
        }
    }
    for (const auto& record : doc) {
        std::vector<Cell> cells(frame.columns.size());
        for (std::size_t i = 0; i < frame.columns.size(); ++i) {
            if (!record.contains(frame.columns[i])) continue;
            const auto& v = record.at(frame.columns[i]);
            if (v.is_null()) continue;
            std::string s = v.is_string() ? v.get<std::string>() : v.dump();
            if (!s.empty()) cells[i] = std::move(s);
        }
        frame.rows.push_back(std::move(cells));
    }
    return frame;
}

Frame extract(const std::string& path, SourceFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open dataset: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return format == SourceFormat::Csv ? frame_from_csv(ss.str())
                                       : frame_from_json_records(ss.str());
}

Frame extract(const std::string& path) {
    SourceFormat format =
        text::ends_with(path, ".json") ? SourceFormat::Records : SourceFormat::Csv;
    return extract(path, format);
}

std::string frame_to_csv(const Frame& frame) {
    std::vector<csv::Row> rows;
    rows.push_back(frame.columns);
    for (const auto& row : frame.rows) {
        csv::Row out;
        for (const auto& cell : row) out.push_back(cell ? *cell : "");
        rows.push_back(std::move(out));
    }
    return csv::write(rows);
}

} // namespace dgkit::etl
