#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dgkit/errors.hpp"
#include "dgkit/rdf/term.hpp"

namespace dgkit::uri {

// "v<digits>" or a real ISO-8601 calendar date.
struct VersionOrDate {
    enum class Kind { Version, Date };
    Kind kind = Kind::Version;
    std::string text = "v1";

    static std::optional<VersionOrDate> parse(std::string_view s);
    bool operator==(const VersionOrDate&) const = default;
};

// Enterprise URI parts:
//   authority / release / domain / subdomain / system / timestamp
//   [/ type] [/ standard] / entity (parent first, then children)
struct GovernedUri {
    std::string authority;
    std::string release;
    std::string business_domain;
    std::string business_subdomain;
    std::string system_of_record;
    VersionOrDate timestamp;
    std::optional<std::string> type_segment;
    std::optional<std::string> standard_segment;
    std::vector<std::string> entity_path;

    bool operator==(const GovernedUri&) const = default;
};

// Controlled lists that govern each segment. Single source of truth for
// every URI minted by the toolkit.
struct SegmentRegistry {
    std::string authority;
    std::vector<std::string> releases;
    std::vector<std::string> business_domains;
    std::vector<std::string> business_subdomains;
    std::vector<std::string> systems_of_record;
    std::vector<std::string> type_segments;
    std::vector<std::string> standard_segments;

    static SegmentRegistry from_json(std::string_view json_text);
    static SegmentRegistry from_json_file(const std::string& path);
    void check() const; // lists nonempty, values unique
};

enum class UriErrorCode {
    MissingMandatorySegment,
    UnregisteredSegment,
    InvalidTimestamp,
    InvalidToken,
    EmptySegment,
    NotGoverned,
    Ambiguous,
};

class UriError : public Error {
public:
    UriError(UriErrorCode code, const std::string& detail);
    UriErrorCode code() const { return code_; }

private:
    UriErrorCode code_;
};

bool is_token(std::string_view s); // [A-Za-z0-9_.-]+

rdf::Iri build_uri(const GovernedUri& parts, const SegmentRegistry& registry);
GovernedUri parse_uri(const rdf::Iri& iri, const SegmentRegistry& registry);

struct ValidationOutcome {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

ValidationOutcome validate_uri(const rdf::Iri& iri, const SegmentRegistry& registry);

} // namespace dgkit::uri
