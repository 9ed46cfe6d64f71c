#include <doctest.h>

#include <random>

#include "dgkit/uri/governed_uri.hpp"
#include "test_support.hpp"

using namespace dgkit;
using namespace dgkit::uri;

namespace {

const SegmentRegistry& reg() {
    return testsupport::test_config().registry;
}

GovernedUri example_parts() {
    GovernedUri parts;
    parts.authority = "https://data.example.org";
    parts.release = "r1";
    parts.business_domain = "development";
    parts.business_subdomain = "clinical";
    parts.system_of_record = "globalmetadata";
    parts.timestamp = {VersionOrDate::Kind::Version, "v1"};
    parts.type_segment = "fullyqualifiedelement";
    parts.entity_path = {"DR_AA_AACAT"};
    return parts;
}

} // namespace

TEST_CASE("build: the governed variable URI") {
    auto iri = build_uri(example_parts(), reg());
    CHECK(iri.value ==
          "https://data.example.org/r1/development/clinical/globalmetadata/v1/"
          "fullyqualifiedelement/DR_AA_AACAT");
}

TEST_CASE("build: missing mandatory segment is named") {
    auto parts = example_parts();
    parts.system_of_record.clear();
    try {
        build_uri(parts, reg());
        FAIL("expected UriError");
    } catch (const UriError& e) {
        CHECK(e.code() == UriErrorCode::MissingMandatorySegment);
        CHECK(std::string(e.what()).find("system_of_record") != std::string::npos);
    }
}

TEST_CASE("build: impossible calendar date is rejected") {
    auto parts = example_parts();
    parts.timestamp = {VersionOrDate::Kind::Date, "2023-13-40"};
    try {
        build_uri(parts, reg());
        FAIL("expected UriError");
    } catch (const UriError& e) {
        CHECK(e.code() == UriErrorCode::InvalidTimestamp);
    }
}

TEST_CASE("build: unregistered segment is rejected") {
    auto parts = example_parts();
    parts.business_domain = "marketingX";
    try {
        build_uri(parts, reg());
        FAIL("expected UriError");
    } catch (const UriError& e) {
        CHECK(e.code() == UriErrorCode::UnregisteredSegment);
    }
}

TEST_CASE("parse: inverse of build on the worked example") {
    auto parts = example_parts();
    auto parsed = parse_uri(build_uri(parts, reg()), reg());
    CHECK(parsed == parts);
}

TEST_CASE("parse: foreign authority is NotGoverned") {
    try {
        parse_uri(rdf::Iri{"https://example.org/other/thing"}, reg());
        FAIL("expected UriError");
    } catch (const UriError& e) {
        CHECK(e.code() == UriErrorCode::NotGoverned);
    }
}

TEST_CASE("parse: unregistered token after timestamp is entity path") {
    rdf::Iri iri{"https://data.example.org/r1/development/clinical/globalmetadata/v1/DR_X"};
    auto parsed = parse_uri(iri, reg());
    CHECK_FALSE(parsed.type_segment);
    CHECK_FALSE(parsed.standard_segment);
    CHECK(parsed.entity_path == std::vector<std::string>{"DR_X"});
}

TEST_CASE("parse: type and standard segments both recognised in order") {
    rdf::Iri iri{"https://data.example.org/r1/development/clinical/globalmetadata/v1/"
                 "fullyqualifiedelement/sdtm/DM/SEX"};
    auto parsed = parse_uri(iri, reg());
    CHECK(parsed.type_segment == "fullyqualifiedelement");
    CHECK(parsed.standard_segment == "sdtm");
    CHECK(parsed.entity_path == std::vector<std::string>{"DM", "SEX"});
}

TEST_CASE("parse: a registered token never swallows the last entity segment") {
    // single token after the timestamp parses as entity even when registered
    rdf::Iri iri{
        "https://data.example.org/r1/development/clinical/globalmetadata/v1/fullyqualifiedelement"};
    auto parsed = parse_uri(iri, reg());
    CHECK_FALSE(parsed.type_segment);
    CHECK(parsed.entity_path == std::vector<std::string>{"fullyqualifiedelement"});
}

TEST_CASE("parse: ambiguity across type and standard registries is an error") {
    SegmentRegistry ambiguous = reg();
    ambiguous.standard_segments.push_back("fullyqualifiedelement");
    rdf::Iri iri{"https://data.example.org/r1/development/clinical/globalmetadata/v1/"
                 "fullyqualifiedelement/DR_X"};
    try {
        parse_uri(iri, ambiguous);
        FAIL("expected UriError");
    } catch (const UriError& e) {
        CHECK(e.code() == UriErrorCode::Ambiguous);
    }
}

TEST_CASE("validate: worked example is ok") {
    CHECK(validate_uri(build_uri(example_parts(), reg()), reg()).ok());
}

TEST_CASE("validate: empty segment") {
    rdf::Iri iri{
        "https://data.example.org/r1/development/clinical//v1/fullyqualifiedelement/DR_X"};
    auto outcome = validate_uri(iri, reg());
    REQUIRE_FALSE(outcome.ok());
    CHECK(outcome.violations.front().find("empty segment") != std::string::npos);
}

TEST_CASE("validate: unregistered business domain") {
    rdf::Iri iri{"https://data.example.org/r1/marketingX/clinical/globalmetadata/v1/DR_X"};
    auto outcome = validate_uri(iri, reg());
    REQUIRE_FALSE(outcome.ok());
    CHECK(outcome.violations.front().find("marketingX") != std::string::npos);
}

TEST_CASE("validate: several findings accumulate") {
    rdf::Iri iri{"https://data.example.org/r1/marketingX/clinical/globalmetadata/2023-13-40/X"};
    auto outcome = validate_uri(iri, reg());
    CHECK(outcome.violations.size() == 2);
}

TEST_CASE("property: parse(build(u)) == u over registry-conforming parts") {
    std::mt19937_64 rng(7);
    const auto& registry = reg();
    auto pick = [&](const std::vector<std::string>& list) {
        return list[rng() % list.size()];
    };
    // entity tokens disjoint from the registered type/standard tokens; a
    // leading registered token is inherently ambiguous with the type slot
    auto entity_token = [&] {
        static const std::string alphabet =
            "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_.-";
        std::string token = "E";
        std::size_t len = 1 + rng() % 10;
        for (std::size_t i = 0; i < len; ++i) token.push_back(alphabet[rng() % alphabet.size()]);
        return token;
    };

    for (int i = 0; i < 1000; ++i) {
        GovernedUri parts;
        parts.authority = registry.authority;
        parts.release = pick(registry.releases);
        parts.business_domain = pick(registry.business_domains);
        parts.business_subdomain = pick(registry.business_subdomains);
        parts.system_of_record = pick(registry.systems_of_record);
        if (rng() % 2) {
            parts.timestamp = {VersionOrDate::Kind::Version,
                               "v" + std::to_string(rng() % 40)};
        } else {
            int year = 2000 + int(rng() % 30);
            unsigned month = 1 + unsigned(rng() % 12);
            unsigned day = 1 + unsigned(rng() % 28);
            char buf[16];
            std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year, month, day);
            parts.timestamp = {VersionOrDate::Kind::Date, buf};
        }
        if (rng() % 2) parts.type_segment = pick(registry.type_segments);
        if (rng() % 2) parts.standard_segment = pick(registry.standard_segments);
        std::size_t entities = 1 + rng() % 3;
        for (std::size_t k = 0; k < entities; ++k) parts.entity_path.push_back(entity_token());

        auto iri = build_uri(parts, registry);
        CHECK(build_uri(parts, registry) == iri); // minting determinism
        auto parsed = parse_uri(iri, registry);
        if (!(parsed == parts)) {
            CAPTURE(iri.value);
            CHECK(parsed == parts);
            break;
        }
        CHECK(validate_uri(iri, registry).ok());
    }
}
