#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace dgkit::csv {

using Row = std::vector<std::string>;

// RFC 4180 reader: quoted fields, escaped quotes, embedded newlines.
// Accepts both LF and CRLF records. Throws ParseError on malformed quoting.
std::vector<Row> parse(std::string_view data);

std::string quote_field(std::string_view field);

// Fields are quoted only when they contain a comma, quote, or newline.
// Records end with LF.
std::string write(const std::vector<Row>& rows);

} // namespace dgkit::csv
