#include "dgkit/etl/transforms.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dgkit/dates.hpp"
#include "dgkit/errors.hpp"
#include "dgkit/text.hpp"

namespace dgkit::etl {

namespace {

std::string canonical_number(double v) {
    if (v == static_cast<long long>(v) && std::abs(v) < 1e15)
        return std::to_string(static_cast<long long>(v));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

// format tokens: YYYY, MM, DD; everything else matches literally
std::optional<dates::Date> parse_with_format(const std::string& value,
                                             const std::string& format) {
    int year = 0;
    unsigned month = 0, day = 0;
    std::size_t vi = 0;
    for (std::size_t fi = 0; fi < format.size();) {
        auto read_digits = [&](std::size_t n, unsigned& out) {
            unsigned v = 0;
            for (std::size_t k = 0; k < n; ++k) {
                if (vi >= value.size() || !std::isdigit(static_cast<unsigned char>(value[vi])))
                    return false;
                v = v * 10 + static_cast<unsigned>(value[vi++] - '0');
            }
            out = v;
            return true;
        };
        if (format.compare(fi, 4, "YYYY") == 0) {
            unsigned y = 0;
            if (!read_digits(4, y)) return std::nullopt;
            year = static_cast<int>(y);
            fi += 4;
        } else if (format.compare(fi, 2, "MM") == 0) {
            if (!read_digits(2, month)) return std::nullopt;
            fi += 2;
        } else if (format.compare(fi, 2, "DD") == 0) {
            if (!read_digits(2, day)) return std::nullopt;
            fi += 2;
        } else {
            if (vi >= value.size() || value[vi] != format[fi]) return std::nullopt;
            ++vi;
            ++fi;
        }
    }
    if (vi != value.size()) return std::nullopt;
    dates::Date d{year, month, day};
    if (!dates::is_valid(d)) return std::nullopt;
    return d;
}

// expression grammar: concat(arg {, arg}) ; arg := column-name | "literal"
struct ComputedExpr {
    struct Arg {
        bool literal;
        std::string value;
    };
    std::vector<Arg> args;

    static ComputedExpr parse(const std::string& text) {
        ComputedExpr expr;
        std::size_t i = 0;
        auto skip = [&] {
            while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        };
        skip();
        std::string fn;
        while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) ||
                                   text[i] == '_'))
            fn.push_back(text[i++]);
        if (text::to_lower(fn) != "concat")
            throw Error("computed expression must be concat(...): " + text);
        skip();
        if (i >= text.size() || text[i] != '(') throw Error("expected '(' in: " + text);
        ++i;
        while (true) {
            skip();
            if (i >= text.size()) throw Error("unterminated expression: " + text);
            if (text[i] == '"') {
                ++i;
                std::string lit;
                while (i < text.size() && text[i] != '"') lit.push_back(text[i++]);
                if (i >= text.size()) throw Error("unterminated string in: " + text);
                ++i;
                expr.args.push_back({true, lit});
            } else {
                std::string name;
                while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) ||
                                           text[i] == '_' || text[i] == '.'))
                    name.push_back(text[i++]);
                if (name.empty()) throw Error("expected column name or string in: " + text);
                expr.args.push_back({false, name});
            }
            skip();
            if (i < text.size() && text[i] == ',') {
                ++i;
                continue;
            }
            break;
        }
        if (i >= text.size() || text[i] != ')') throw Error("expected ')' in: " + text);
        return expr;
    }
};

} // namespace

TransformResult apply_transforms(Frame frame, const std::vector<ValueTransform>& transforms) {
    TransformResult result;
    for (const auto& t : transforms) {
        if (t.kind == ValueTransform::Kind::Computed) {
            if (frame.column_index(t.target_column))
                throw Error("computed column already exists: " + t.target_column);
            ComputedExpr expr = ComputedExpr::parse(t.expression);
            frame.columns.push_back(t.target_column);
            for (auto& row : frame.rows) {
                std::string value;
                bool null_input = false;
                for (const auto& arg : expr.args) {
                    if (arg.literal) {
                        value += arg.value;
                        continue;
                    }
                    auto idx = frame.column_index(arg.value);
                    if (!idx) throw Error("computed expression references unknown column '" +
                                          arg.value + "'");
                    if (!row[*idx]) {
                        null_input = true;
                        break;
                    }
                    value += *row[*idx];
                }
                row.push_back(null_input ? Cell{} : Cell{value});
            }
            continue;
        }

        auto idx = frame.column_index(t.target_column);
        if (!idx) throw Error("transform target column not found: " + t.target_column);
        for (std::size_t r = 0; r < frame.rows.size(); ++r) {
            Cell& cell = frame.rows[r][*idx];
            if (!cell) continue; // nulls propagate
            switch (t.kind) {
            case ValueTransform::Kind::Trim: {
                std::string trimmed = text::trim(*cell);
                cell = trimmed.empty() ? Cell{} : Cell{trimmed};
                break;
            }
            case ValueTransform::Kind::CaseFold:
                cell = text::to_lower(*cell);
                break;
            case ValueTransform::Kind::ParseNumber: {
                char* end = nullptr;
                double v = std::strtod(cell->c_str(), &end);
                if (end != cell->c_str() + cell->size() || cell->empty()) {
                    result.issues.push_back(
                        {r + 1, t.target_column, "not a number: '" + *cell + "'"});
                    cell.reset();
                } else {
                    cell = canonical_number(v);
                }
                break;
            }
            case ValueTransform::Kind::ParseDate: {
                auto parsed = parse_with_format(*cell, t.date_format.empty() ? "YYYY-MM-DD"
                                                                             : t.date_format);
                if (!parsed) {
                    result.issues.push_back({r + 1, t.target_column,
                                             "not a date matching " + t.date_format + ": '" +
                                                 *cell + "'"});
                    cell.reset();
                } else {
                    cell = dates::format_iso(*parsed);
                }
                break;
            }
            case ValueTransform::Kind::Computed:
                break; // handled above
            }
        }
    }
    result.frame = std::move(frame);
    return result;
}

std::vector<ValueTransform> transforms_from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("transforms JSON: ") + e.what());
    }
    if (!doc.is_array()) throw Error("transforms JSON must be an array");
    std::vector<ValueTransform> out;
    for (const auto& item : doc) {
        ValueTransform t;
        std::string kind = item.at("kind").get<std::string>();
        if (kind == "trim") t.kind = ValueTransform::Kind::Trim;
        else if (kind == "case_fold") t.kind = ValueTransform::Kind::CaseFold;
        else if (kind == "parse_number") t.kind = ValueTransform::Kind::ParseNumber;
        else if (kind == "parse_date") t.kind = ValueTransform::Kind::ParseDate;
        else if (kind == "computed") t.kind = ValueTransform::Kind::Computed;
        else throw Error("unknown transform kind '" + kind + "'");
        t.target_column = item.at("column").get<std::string>();
        t.date_format = item.value("format", "");
        t.expression = item.value("expression", "");
        if (t.kind == ValueTransform::Kind::Computed && t.expression.empty())
            throw Error("computed transform needs an expression");
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<ValueTransform> transforms_from_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open transforms file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return transforms_from_json(ss.str());
}

std::string transforms_digest(const std::vector<ValueTransform>& transforms) {
    std::string blob;
    for (const auto& t : transforms) {
        blob += std::to_string(static_cast<int>(t.kind));
        blob.push_back('\x1f');
        blob += t.target_column;
        blob.push_back('\x1f');
        blob += t.date_format;
        blob.push_back('\x1f');
        blob += t.expression;
        blob.push_back('\x1e');
    }
    return text::hex(text::fnv1a(blob));
}

} // namespace dgkit::etl
