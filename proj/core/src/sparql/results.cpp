#include <algorithm>

#include <json.hpp>

#include "dgkit/csv.hpp"
#include "dgkit/sparql/query.hpp"

namespace dgkit::sparql {

std::string to_sparql_json(const SolutionTable& table) {
    nlohmann::ordered_json doc;
    doc["head"]["vars"] = table.vars;
    auto& bindings = doc["results"]["bindings"];
    bindings = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json binding = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < table.vars.size(); ++i) {
            if (i >= row.size() || !row[i]) continue;
            const rdf::Term& t = *row[i];
            nlohmann::ordered_json cell;
            if (auto* iri = std::get_if<rdf::Iri>(&t)) {
                cell["type"] = "uri";
                cell["value"] = iri->value;
            } else if (auto* b = std::get_if<rdf::BlankNode>(&t)) {
                cell["type"] = "bnode";
                cell["value"] = b->label;
            } else {
                const auto& lit = std::get<rdf::Literal>(t);
                cell["type"] = "literal";
                cell["value"] = lit.lexical();
                if (lit.language()) cell["xml:lang"] = *lit.language();
                else if (lit.datatype()) cell["datatype"] = lit.datatype()->value;
            }
            binding[table.vars[i]] = std::move(cell);
        }
        bindings.push_back(std::move(binding));
    }
    return doc.dump(2) + "\n";
}

std::string to_csv(const SolutionTable& table) {
    std::vector<csv::Row> rows;
    rows.push_back(table.vars);
    for (const auto& row : table.rows) {
        csv::Row out;
        for (std::size_t i = 0; i < table.vars.size(); ++i)
            out.push_back(i < row.size() && row[i] ? rdf::term_text(*row[i]) : "");
        rows.push_back(std::move(out));
    }
    return csv::write(rows);
}

std::string to_text(const SolutionTable& table) {
    std::vector<std::vector<std::string>> cells;
    cells.push_back(table.vars);
    for (const auto& row : table.rows) {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < table.vars.size(); ++i)
            out.push_back(i < row.size() && row[i] ? rdf::term_text(*row[i]) : "");
        cells.push_back(std::move(out));
    }
    std::vector<std::size_t> width(table.vars.size(), 0);
    for (const auto& row : cells)
        for (std::size_t i = 0; i < row.size(); ++i)
            width[i] = std::max(width[i], row[i].size());

    std::string out;
    for (std::size_t r = 0; r < cells.size(); ++r) {
        for (std::size_t i = 0; i < cells[r].size(); ++i) {
            if (i) out += "  ";
            out += cells[r][i];
            if (i + 1 < cells[r].size())
                out.append(width[i] - cells[r][i].size(), ' ');
        }
        out.push_back('\n');
        if (r == 0) {
            for (std::size_t i = 0; i < width.size(); ++i) {
                if (i) out += "  ";
                out.append(width[i], '-');
            }
            out.push_back('\n');
        }
    }
    if (cells.size() == 1) out += "(no rows)\n";
    return out;
}

} // namespace dgkit::sparql
