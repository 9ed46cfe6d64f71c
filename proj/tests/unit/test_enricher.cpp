#include <doctest.h>

#include <map>

#include "dgkit/enricher.hpp"
#include "dgkit/rdf/turtle.hpp"
#include "dgkit/rdf/vocab.hpp"
#include "dgkit/terminology/glossary.hpp"
#include "test_support.hpp"

using namespace dgkit;
using namespace dgkit::enricher;
using testsupport::fixture_path;
using testsupport::make_store;
using testsupport::test_config;

TEST_CASE("ingest: clean single-file document emits reloadable turtle") {
    auto result = ingest(fixture_path("enricher_clean.csv"), test_config());
    CHECK(result.qc.ok());
    REQUIRE_FALSE(result.turtle.empty());
    CHECK(result.concepts.size() == 3);

    auto store = make_store();
    auto quads = rdf::parse_turtle(result.turtle, store.graph_iri_for_source("enricher.ttl"));
    auto report = store.load(quads, "enricher.ttl");
    CHECK(report.added > 0);

    // three concepts, each with a pref label and a definition with source tag
    CHECK(store.match(std::nullopt, rdf::vocab::skos_pref_label()).size() == 3);
    CHECK(store.match(std::nullopt, rdf::vocab::skos_definition()).size() == 3);

    // round-trip: the glossary report recovers labels and definition text
    terminology::Glossary glossary(store, test_config());
    auto csv_text = glossary.report_csv();
    CHECK(csv_text.find("Adverse event intake") != std::string::npos);
    CHECK(csv_text.find("Process of receiving and triaging adverse event reports") !=
          std::string::npos);
    CHECK(csv_text.find("[human: Clinical Data Office") != std::string::npos);

    // authorship provenance from the config tab
    auto v = test_config().vocab();
    auto authors = store.match(std::nullopt, v.author());
    REQUIRE(authors.size() == 1);
    CHECK(rdf::term_text(authors[0].object) == "J. Smith");
    CHECK(store.match(std::nullopt, v.generated()).size() == 3);
}

TEST_CASE("ingest: bundle directory variant matches the single file") {
    auto from_file = ingest(fixture_path("enricher_clean.csv"), test_config());
    auto from_bundle = ingest(fixture_path("enricher_bundle"), test_config());
    CHECK(from_bundle.qc.ok());
    // same concepts captured; the provenance digest differs by source path
    CHECK(from_bundle.concepts.size() == from_file.concepts.size());
}

TEST_CASE("ingest: dirty document fails QC with one finding per defect and emits nothing") {
    auto result = ingest(fixture_path("enricher_dirty.csv"), test_config());
    CHECK_FALSE(result.qc.ok());
    CHECK(result.turtle.empty());

    std::map<QcCheck, std::size_t> by_check;
    for (const auto& f : result.qc.findings) ++by_check[f.check];
    CHECK(by_check[QcCheck::LabelLocalUniqueness] == 1);
    CHECK(by_check[QcCheck::UriValidity] == 1);
    CHECK(by_check[QcCheck::DefinitionPresence] == 1);
    CHECK(by_check[QcCheck::StructureConformance] == 1);
    CHECK(by_check[QcCheck::UriUniqueness] == 1);
}

TEST_CASE("ingest: missing section is an error") {
    CHECK_THROWS_WITH_AS((void)ingest(fixture_path("demographics.csv"), test_config()),
                         doctest::Contains("missing"), Error);
    CHECK_THROWS_AS((void)ingest(fixture_path("no_such_file.csv"), test_config()), Error);
}
