#include <doctest.h>

#include "dgkit/csv.hpp"
#include "dgkit/rdf/vocab.hpp"
#include "dgkit/terminology/glossary.hpp"
#include "test_support.hpp"

using namespace dgkit;
using namespace dgkit::terminology;
using rdf::Iri;
using rdf::Literal;
using rdf::Term;
namespace vocab = rdf::vocab;
using testsupport::make_store;
using testsupport::test_config;

namespace {

Concept make_concept(const ToolkitConfig& cfg, const std::string& token,
                     const std::string& label) {
    Concept c;
    c.uri = cfg.mint("concept", token);
    c.pref_label = label;
    return c;
}

} // namespace

TEST_CASE("upsert: single pref label quad") {
    auto store = make_store();
    Glossary glossary(store, test_config());
    glossary.upsert_concept(make_concept(test_config(), "Male", "Male"));
    CHECK(store.match(std::nullopt, vocab::skos_pref_label()).size() == 1);
}

TEST_CASE("upsert: definitions append with their source tags, labels replace") {
    auto store = make_store();
    const auto& cfg = test_config();
    Glossary glossary(store, cfg);
    auto c = make_concept(cfg, "Sex", "Sex");
    c.definitions = {{"Sex as collected on the case report form.", SourceKind::Human, "steward"}};
    glossary.upsert_concept(c);

    c.pref_label = "Subject sex";
    c.definitions = {{"Sex per the submission standard.", SourceKind::Document, "IG v3.2"}};
    glossary.upsert_concept(c);

    auto labels = store.match(Term{c.uri}, vocab::skos_pref_label());
    REQUIRE(labels.size() == 1);
    CHECK(std::get<Literal>(labels[0].object).lexical() == "Subject sex");

    auto defs = store.match(Term{c.uri}, vocab::skos_definition());
    CHECK(defs.size() == 2);

    std::set<std::string> kinds;
    for (const auto& d : defs) {
        auto kind = store.first_object(d.object, cfg.vocab().definition_source_kind());
        REQUIRE(kind);
        kinds.insert(rdf::term_text(*kind));
    }
    CHECK(kinds == std::set<std::string>{"document", "human"});
}

TEST_CASE("upsert: empty pref label is an error") {
    auto store = make_store();
    Glossary glossary(store, test_config());
    Concept c = make_concept(test_config(), "X", "");
    CHECK_THROWS_AS(glossary.upsert_concept(c), Error);
}

TEST_CASE("upsert: no concept ends up with two prefLabels in one graph") {
    auto store = make_store();
    Glossary glossary(store, test_config());
    auto c = make_concept(test_config(), "Term", "One");
    glossary.upsert_concept(c);
    c.pref_label = "Two";
    glossary.upsert_concept(c);
    for (const auto& subject : store.subjects(vocab::skos_pref_label()))
        CHECK(store.match(subject, vocab::skos_pref_label(), std::nullopt,
                          glossary.graph()).size() == 1);
}

TEST_CASE("suggest: case-fold identity scores 1.0") {
    auto store = make_store();
    Glossary glossary(store, test_config());
    glossary.upsert_concept(make_concept(test_config(), "Male", "Male"));
    auto suggestions = glossary.suggest_matches("male", 0.5);
    REQUIRE_FALSE(suggestions.empty());
    CHECK(suggestions[0].score == doctest::Approx(1.0));

    auto sex1c = glossary.suggest_matches("Sex1c", 0.0);
    glossary.upsert_concept(make_concept(test_config(), "SEX1C", "SEX1C"));
    sex1c = glossary.suggest_matches("Sex1c", 0.9);
    REQUIRE_FALSE(sex1c.empty());
    CHECK(sex1c[0].score == doctest::Approx(1.0));
}

TEST_CASE("suggest: edit-distance score matches the brute-force value") {
    auto store = make_store();
    Glossary glossary(store, test_config());
    glossary.upsert_concept(make_concept(test_config(), "Gender", "Gender"));
    auto suggestions = glossary.suggest_matches("Gendr", 0.7);
    REQUIRE(suggestions.size() == 1);
    CHECK(suggestions[0].score == doctest::Approx(1.0 - 1.0 / 6.0));
    CHECK(glossary.suggest_matches("Gendr", 0.9).empty());
}

TEST_CASE("suggest: hidden labels are consulted") {
    auto store = make_store();
    Glossary glossary(store, test_config());
    auto c = make_concept(test_config(), "Subject", "Clinical study subject");
    c.hidden_labels = {"patient"};
    glossary.upsert_concept(c);
    auto suggestions = glossary.suggest_matches("patient", 1.0);
    REQUIRE(suggestions.size() == 1);
    CHECK(suggestions[0].uri == c.uri);
    // reflexive completeness: the pref label itself always comes back first
    auto self_match = glossary.suggest_matches("Clinical study subject", 1.0);
    REQUIRE_FALSE(self_match.empty());
    CHECK(self_match[0].uri == c.uri);
}

TEST_CASE("mapping: exact is symmetric, narrow is directional") {
    auto store = make_store();
    const auto& cfg = test_config();
    Glossary glossary(store, cfg);
    auto a = make_concept(cfg, "A", "A");
    auto b = make_concept(cfg, "B", "B");
    glossary.upsert_concept(a);
    glossary.upsert_concept(b);

    glossary.add_mapping({a.uri, b.uri, MatchStrength::Exact});
    CHECK(store.contains({a.uri, vocab::skos_exact_match(), b.uri, glossary.graph()}));
    CHECK(store.contains({b.uri, vocab::skos_exact_match(), a.uri, glossary.graph()}));

    glossary.add_mapping({a.uri, b.uri, MatchStrength::Narrow});
    CHECK(store.contains({a.uri, vocab::skos_narrow_match(), b.uri, glossary.graph()}));
    CHECK(store.match(Term{b.uri}, vocab::skos_narrow_match()).empty());

    CHECK_THROWS_AS(
        glossary.add_mapping({a.uri, cfg.mint("concept", "Ghost"), MatchStrength::Close}),
        Error);
}

TEST_CASE("mapping: exact symmetry holds store-wide") {
    auto store = make_store();
    testsupport::load_ucm(store);
    testsupport::load_turtle_file(store, "external_sex.ttl");
    Glossary glossary(store, test_config());
    for (const auto& link :
         Glossary::parse_mapping_csv(testsupport::read_file(testsupport::fixture_path(
             "mappings_sex.csv"))))
        glossary.add_mapping(link);

    for (const auto& q : store.match(std::nullopt, vocab::skos_exact_match()))
        CHECK(store.contains({std::get<Iri>(q.object), q.predicate,
                              std::get<Iri>(q.subject), q.graph}));
}

TEST_CASE("coverage: SEX against the external list is 4/4") {
    auto store = make_store();
    testsupport::load_ucm(store);
    testsupport::load_turtle_file(store, "external_sex.ttl");
    const auto& cfg = test_config();
    Glossary glossary(store, cfg);
    for (const auto& link :
         Glossary::parse_mapping_csv(testsupport::read_file(testsupport::fixture_path(
             "mappings_sex.csv"))))
        glossary.add_mapping(link);

    // register the external members as a list to compare against
    std::vector<Iri> external = {Iri{"https://standards.example.net/adminsex/M"},
                                 Iri{"https://standards.example.net/adminsex/F"},
                                 Iri{"https://standards.example.net/adminsex/U"},
                                 Iri{"https://standards.example.net/adminsex/UN"}};
    Iri ext_list = glossary.define_reference_list("ADMINSEX4", external);
    Iri sex_list = cfg.mint("referencelist", "SEX");

    auto coverage = glossary.list_coverage(sex_list, ext_list);
    CHECK(coverage.mapped == 4);
    CHECK(coverage.unmapped_a.empty());
    CHECK(coverage.unmapped_b.empty());

    auto reverse = glossary.list_coverage(ext_list, sex_list);
    CHECK(reverse.mapped == coverage.mapped);
}

TEST_CASE("coverage: unmapped members are listed; disjoint lists map nothing") {
    auto store = make_store();
    const auto& cfg = test_config();
    Glossary glossary(store, cfg);
    std::vector<Iri> a_members, b_members;
    for (const char* name : {"A1", "A2", "A3", "A4"}) {
        auto c = make_concept(cfg, name, name);
        glossary.upsert_concept(c);
        a_members.push_back(c.uri);
    }
    for (const char* name : {"B1", "B2", "B3"}) {
        auto c = make_concept(cfg, name, name);
        glossary.upsert_concept(c);
        b_members.push_back(c.uri);
    }
    Iri list_a = glossary.define_reference_list("LA", a_members);
    Iri list_b = glossary.define_reference_list("LB", b_members);

    SUBCASE("disjoint and unlinked") {
        auto coverage = glossary.list_coverage(list_a, list_b);
        CHECK(coverage.mapped == 0);
        CHECK(coverage.unmapped_a.size() == 4);
        CHECK(coverage.unmapped_b.size() == 3);
    }

    SUBCASE("three exact links leave one member of A unmapped") {
        for (int i = 0; i < 3; ++i)
            glossary.add_mapping({a_members[size_t(i)], b_members[size_t(i)],
                                  MatchStrength::Exact});
        auto coverage = glossary.list_coverage(list_a, list_b);
        CHECK(coverage.mapped == 3);
        REQUIRE(coverage.unmapped_a.size() == 1);
        CHECK(coverage.unmapped_a[0] == a_members[3]);
        CHECK(coverage.unmapped_b.empty());
    }

    SUBCASE("identical list against itself with self-links") {
        for (const auto& m : a_members) glossary.add_mapping({m, m, MatchStrength::Exact});
        auto coverage = glossary.list_coverage(list_a, list_a);
        CHECK(coverage.mapped == a_members.size());
        CHECK(coverage.unmapped_a.empty());
        CHECK(coverage.unmapped_b.empty());
    }
}

TEST_CASE("glossary report: empty store gives a header-only table") {
    auto store = make_store();
    Glossary glossary(store, test_config());
    auto rows = csv::parse(glossary.report_csv());
    REQUIRE(rows.size() == 1);
    CHECK(rows[0][0] == "uri");
}

TEST_CASE("glossary report: one row per labelled entity, definitions joined") {
    auto store = make_store();
    testsupport::load_ucm(store);
    Glossary glossary(store, test_config());
    auto rows = csv::parse(glossary.report_csv());
    std::size_t labelled = store.subjects(vocab::skos_pref_label()).size();
    CHECK(rows.size() == labelled + 1);

    bool found_sex = false;
    for (const auto& row : rows) {
        if (row[1] == "DM.SEX") {
            found_sex = true;
            CHECK(row[3].find("[human: clinical data steward]") != std::string::npos);
            CHECK(row[3].find("[document: CDISC SDTM implementation guide]") !=
                  std::string::npos);
            CHECK(row[3].find(" | ") != std::string::npos); // two definitions in one cell
        }
    }
    CHECK(found_sex);
    // turtle form reparses
    auto quads = rdf::parse_turtle(glossary.report_turtle(), Iri{"https://x/g"});
    CHECK(quads.size() > 0);
}
