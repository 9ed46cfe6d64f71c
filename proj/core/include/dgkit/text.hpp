#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dgkit::text {

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);

// Case-folds and collapses internal whitespace runs to single spaces.
std::string fold_label(std::string_view s);

std::vector<std::string> split(std::string_view s, char delim);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

bool starts_with(std::string_view s, std::string_view prefix);
bool ends_with(std::string_view s, std::string_view suffix);

// Levenshtein edit distance (unit costs).
std::size_t edit_distance(std::string_view a, std::string_view b);

// 1 - dist/max(len); both inputs are folded first. Empty vs empty is 1.
double label_similarity(std::string_view a, std::string_view b);

// FNV-1a, used for deterministic content digests in minted identifiers.
std::uint64_t fnv1a(std::string_view s);
std::string hex(std::uint64_t v);

} // namespace dgkit::text
