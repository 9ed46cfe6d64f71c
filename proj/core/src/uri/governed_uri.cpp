#include "dgkit/uri/governed_uri.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dgkit/dates.hpp"
#include "dgkit/text.hpp"

namespace dgkit::uri {

namespace {

const char* code_name(UriErrorCode code) {
    switch (code) {
    case UriErrorCode::MissingMandatorySegment: return "missing mandatory segment";
    case UriErrorCode::UnregisteredSegment: return "unregistered segment";
    case UriErrorCode::InvalidTimestamp: return "invalid timestamp";
    case UriErrorCode::InvalidToken: return "invalid token";
    case UriErrorCode::EmptySegment: return "empty segment";
    case UriErrorCode::NotGoverned: return "not governed";
    case UriErrorCode::Ambiguous: return "ambiguous segment";
    }
    return "uri error";
}

bool contains(const std::vector<std::string>& list, const std::string& value) {
    return std::find(list.begin(), list.end(), value) != list.end();
}

} // namespace

UriError::UriError(UriErrorCode code, const std::string& detail)
    : Error(std::string(code_name(code)) + ": " + detail), code_(code) {}

bool is_token(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                  c == '_' || c == '.' || c == '-';
        if (!ok) return false;
    }
    return true;
}

std::optional<VersionOrDate> VersionOrDate::parse(std::string_view s) {
    if (s.size() >= 2 && s[0] == 'v') {
        bool digits = true;
        for (std::size_t i = 1; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') digits = false;
        if (digits) return VersionOrDate{Kind::Version, std::string(s)};
        return std::nullopt;
    }
    if (auto d = dates::parse_iso_date(s))
        return VersionOrDate{Kind::Date, std::string(s)};
    return std::nullopt;
}

SegmentRegistry SegmentRegistry::from_json(std::string_view json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("segment registry: ") + e.what());
    }
    auto list = [&](const char* key) {
        std::vector<std::string> out;
        if (!j.contains(key)) throw ConfigError(std::string("segment registry: missing '") + key + "'");
        for (const auto& v : j.at(key)) out.push_back(v.get<std::string>());
        return out;
    };
    SegmentRegistry reg;
    reg.authority = j.at("authority").get<std::string>();
    while (!reg.authority.empty() && reg.authority.back() == '/') reg.authority.pop_back();
    reg.releases = list("releases");
    reg.business_domains = list("business_domains");
    reg.business_subdomains = list("business_subdomains");
    reg.systems_of_record = list("systems_of_record");
    reg.type_segments = list("type_segments");
    reg.standard_segments = list("standard_segments");
    reg.check();
    return reg;
}

SegmentRegistry SegmentRegistry::from_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open segment registry: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

void SegmentRegistry::check() const {
    if (authority.empty()) throw ConfigError("segment registry: empty authority");
    auto check_list = [](const char* name, const std::vector<std::string>& list) {
        if (list.empty()) throw ConfigError(std::string("segment registry: empty list '") + name + "'");
        std::set<std::string> seen;
        for (const auto& v : list) {
            if (!is_token(v))
                throw ConfigError(std::string("segment registry: bad token '") + v + "' in " + name);
            if (!seen.insert(v).second)
                throw ConfigError(std::string("segment registry: duplicate '") + v + "' in " + name);
        }
    };
    check_list("releases", releases);
    check_list("business_domains", business_domains);
    check_list("business_subdomains", business_subdomains);
    check_list("systems_of_record", systems_of_record);
    check_list("type_segments", type_segments);
    check_list("standard_segments", standard_segments);
}

rdf::Iri build_uri(const GovernedUri& parts, const SegmentRegistry& registry) {
    auto require = [](const std::string& value, const char* name) {
        if (value.empty())
            throw UriError(UriErrorCode::MissingMandatorySegment, name);
    };
    require(parts.authority, "authority");
    require(parts.release, "release");
    require(parts.business_domain, "business_domain");
    require(parts.business_subdomain, "business_subdomain");
    require(parts.system_of_record, "system_of_record");
    if (parts.entity_path.empty())
        throw UriError(UriErrorCode::MissingMandatorySegment, "entity_path");

    auto registered = [&](const std::vector<std::string>& list, const std::string& value,
                          const char* name) {
        if (!is_token(value))
            throw UriError(UriErrorCode::InvalidToken, std::string(name) + " '" + value + "'");
        if (!contains(list, value))
            throw UriError(UriErrorCode::UnregisteredSegment,
                           std::string(name) + " '" + value + "'");
    };
    registered(registry.releases, parts.release, "release");
    registered(registry.business_domains, parts.business_domain, "business_domain");
    registered(registry.business_subdomains, parts.business_subdomain, "business_subdomain");
    registered(registry.systems_of_record, parts.system_of_record, "system_of_record");

    if (!VersionOrDate::parse(parts.timestamp.text) ||
        VersionOrDate::parse(parts.timestamp.text)->kind != parts.timestamp.kind)
        throw UriError(UriErrorCode::InvalidTimestamp, parts.timestamp.text);

    if (parts.type_segment)
        registered(registry.type_segments, *parts.type_segment, "type_segment");
    if (parts.standard_segment)
        registered(registry.standard_segments, *parts.standard_segment, "standard_segment");

    std::string out = parts.authority;
    while (!out.empty() && out.back() == '/') out.pop_back();
    auto push = [&](const std::string& seg) {
        out += '/';
        out += seg;
    };
    push(parts.release);
    push(parts.business_domain);
    push(parts.business_subdomain);
    push(parts.system_of_record);
    push(parts.timestamp.text);
    if (parts.type_segment) push(*parts.type_segment);
    if (parts.standard_segment) push(*parts.standard_segment);
    for (const auto& e : parts.entity_path) {
        if (!is_token(e))
            throw UriError(UriErrorCode::InvalidToken, "entity segment '" + e + "'");
        push(e);
    }
    return rdf::Iri{out};
}

GovernedUri parse_uri(const rdf::Iri& iri, const SegmentRegistry& registry) {
    const std::string& value = iri.value;
    std::string prefix = registry.authority + "/";
    if (!text::starts_with(value, prefix))
        throw UriError(UriErrorCode::NotGoverned, "foreign authority in " + value);

    auto segments = text::split(value.substr(prefix.size()), '/');
    for (const auto& seg : segments)
        if (seg.empty()) throw UriError(UriErrorCode::EmptySegment, value);

    if (segments.empty() || !contains(registry.releases, segments[0]))
        throw UriError(UriErrorCode::NotGoverned, "unknown release in " + value);

    if (segments.size() < 6)
        throw UriError(UriErrorCode::MissingMandatorySegment,
                       "expected at least release/domain/subdomain/system/timestamp/entity");

    GovernedUri parts;
    parts.authority = registry.authority;
    parts.release = segments[0];
    parts.business_domain = segments[1];
    parts.business_subdomain = segments[2];
    parts.system_of_record = segments[3];

    auto registered = [&](const std::vector<std::string>& list, const std::string& value_,
                          const char* name) {
        if (!contains(list, value_))
            throw UriError(UriErrorCode::UnregisteredSegment,
                           std::string(name) + " '" + value_ + "'");
    };
    registered(registry.business_domains, parts.business_domain, "business_domain");
    registered(registry.business_subdomains, parts.business_subdomain, "business_subdomain");
    registered(registry.systems_of_record, parts.system_of_record, "system_of_record");

    auto ts = VersionOrDate::parse(segments[4]);
    if (!ts) throw UriError(UriErrorCode::InvalidTimestamp, segments[4]);
    parts.timestamp = *ts;

    // Registered tokens after the timestamp are claimed as type/standard,
    // but never at the cost of an empty entity path.
    std::size_t idx = 5;
    auto remaining = [&] { return segments.size() - idx; };
    if (remaining() > 1) {
        bool in_type = contains(registry.type_segments, segments[idx]);
        bool in_standard = contains(registry.standard_segments, segments[idx]);
        if (in_type && in_standard)
            throw UriError(UriErrorCode::Ambiguous,
                           "'" + segments[idx] + "' is both a type and a standard segment");
        if (in_type) {
            parts.type_segment = segments[idx];
            ++idx;
        } else if (in_standard) {
            parts.standard_segment = segments[idx];
            ++idx;
        }
    }
    if (!parts.standard_segment && remaining() > 1 &&
        contains(registry.standard_segments, segments[idx])) {
        if (contains(registry.type_segments, segments[idx]))
            throw UriError(UriErrorCode::Ambiguous,
                           "'" + segments[idx] + "' is both a type and a standard segment");
        parts.standard_segment = segments[idx];
        ++idx;
    }

    for (; idx < segments.size(); ++idx) {
        if (!is_token(segments[idx]))
            throw UriError(UriErrorCode::InvalidToken, "entity segment '" + segments[idx] + "'");
        parts.entity_path.push_back(segments[idx]);
    }
    if (parts.entity_path.empty())
        throw UriError(UriErrorCode::MissingMandatorySegment, "entity_path");
    return parts;
}

ValidationOutcome validate_uri(const rdf::Iri& iri, const SegmentRegistry& registry) {
    ValidationOutcome outcome;
    const std::string& value = iri.value;

    std::string prefix = registry.authority + "/";
    if (!text::starts_with(value, prefix)) {
        outcome.violations.push_back("not governed: foreign authority");
        return outcome;
    }
    std::string rest = value.substr(prefix.size());
    if (rest.find("//") != std::string::npos || (!rest.empty() && rest.back() == '/') ||
        rest.empty()) {
        outcome.violations.push_back("empty segment");
        return outcome;
    }
    auto segments = text::split(rest, '/');
    if (!contains(registry.releases, segments[0])) {
        outcome.violations.push_back("not governed: unknown release '" + segments[0] + "'");
        return outcome;
    }
    if (segments.size() < 6) {
        outcome.violations.push_back("missing mandatory segment: expected "
                                     "release/domain/subdomain/system/timestamp/entity");
        return outcome;
    }
    auto check_registered = [&](const std::vector<std::string>& list, const std::string& v,
                                const char* name) {
        if (!contains(list, v))
            outcome.violations.push_back(std::string("unregistered segment: ") + name + " '" + v +
                                         "'");
    };
    check_registered(registry.business_domains, segments[1], "business_domain");
    check_registered(registry.business_subdomains, segments[2], "business_subdomain");
    check_registered(registry.systems_of_record, segments[3], "system_of_record");
    if (!VersionOrDate::parse(segments[4]))
        outcome.violations.push_back("invalid timestamp '" + segments[4] + "'");

    std::size_t idx = 5;
    if (segments.size() - idx > 1) {
        bool in_type = contains(registry.type_segments, segments[idx]);
        bool in_standard = contains(registry.standard_segments, segments[idx]);
        if (in_type && in_standard) {
            outcome.violations.push_back("ambiguous segment '" + segments[idx] + "'");
            return outcome;
        }
        if (in_type || in_standard) ++idx;
    }
    if (segments.size() - idx > 1 && contains(registry.standard_segments, segments[idx])) {
        if (contains(registry.type_segments, segments[idx])) {
            outcome.violations.push_back("ambiguous segment '" + segments[idx] + "'");
            return outcome;
        }
        ++idx;
    }
    for (; idx < segments.size(); ++idx)
        if (!is_token(segments[idx]))
            outcome.violations.push_back("invalid token in entity segment '" + segments[idx] + "'");
    return outcome;
}

} // namespace dgkit::uri
