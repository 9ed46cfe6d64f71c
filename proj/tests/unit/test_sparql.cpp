#include <doctest.h>

#include "dgkit/csv.hpp"
#include "dgkit/errors.hpp"
#include "dgkit/sparql/catalogue.hpp"
#include "dgkit/sparql/query.hpp"
#include "test_support.hpp"

#include <json.hpp>

using namespace dgkit;
using namespace dgkit::sparql;
using rdf::Iri;
using rdf::Literal;
using rdf::Term;
using testsupport::fixture_path;
using testsupport::make_store;
using testsupport::read_file;
using testsupport::test_config;

namespace {

std::map<std::string, std::string> prefixes_with_default() {
    auto prefixes = well_known_prefixes();
    prefixes[""] = test_config().vocab().property_base;
    return prefixes;
}

} // namespace

TEST_CASE("parse: the lineage roll-up query") {
    auto query = parse_query(read_file(fixture_path("queries/ucm_lineage.rq")),
                             prefixes_with_default());
    CHECK(query.select_vars.size() == 6);
    CHECK(query.distinct);
    CHECK(query.patterns.size() == 10);
    CHECK(query.filters.size() == 1);
    CHECK(query.filters[0].variable == "Conceptual_Output_Variable");
    CHECK(query.filters[0].pattern == "AE.AEEN");
    CHECK(query.order_by.size() == 4);
}

TEST_CASE("parse: minimal query") {
    auto query = parse_query("SELECT ?x WHERE { ?x ?p ?o }");
    CHECK(query.select_vars == std::vector<std::string>{"x"});
    CHECK_FALSE(query.distinct);
    CHECK(query.patterns.size() == 1);
}

TEST_CASE("parse: unsupported keywords are named") {
    CHECK_THROWS_WITH_AS(
        (void)parse_query("SELECT ?x WHERE { OPTIONAL { ?x ?p ?o } }"),
        doctest::Contains("OPTIONAL"), ParseError);
    CHECK_THROWS_WITH_AS(
        (void)parse_query("SELECT ?x WHERE { ?x ?p ?o } LIMIT 5"),
        doctest::Contains("LIMIT"), ParseError);
}

TEST_CASE("parse: unknown prefix and undeclared select variable") {
    CHECK_THROWS_WITH_AS((void)parse_query("SELECT ?x WHERE { ?x foo:bar ?o }"),
                         doctest::Contains("unknown prefix"), ParseError);
    CHECK_THROWS_AS((void)parse_query("SELECT ?nope WHERE { ?x ?p ?o }"), Error);
}

TEST_CASE("evaluate: lineage query reproduces the eight-row table exactly") {
    auto store = make_store();
    testsupport::load_ucm(store);
    auto query = parse_query(read_file(fixture_path("queries/ucm_lineage.rq")),
                             prefixes_with_default());
    auto table = evaluate(query, store);
    REQUIRE(table.rows.size() == 8);

    auto cell = [&](std::size_t row, std::size_t col) {
        REQUIRE(table.rows[row][col]);
        return rdf::term_text(*table.rows[row][col]);
    };
    // stages run 4,4,5,5,5,5,5,5 -> 5,5,5,5,5,5,6,7
    std::vector<std::string> in_stages, out_stages, derivations;
    for (std::size_t r = 0; r < 8; ++r) {
        in_stages.push_back(cell(r, 0));
        out_stages.push_back(cell(r, 5));
        derivations.push_back(cell(r, 2));
    }
    CHECK(in_stages == std::vector<std::string>{"4", "4", "5", "5", "5", "5", "5", "5"});
    CHECK(out_stages == std::vector<std::string>{"5", "5", "5", "5", "5", "5", "6", "7"});
    CHECK(std::count(derivations.begin(), derivations.end(), "NCDS COPY_ELEMENT") == 4);
    CHECK(std::count(derivations.begin(), derivations.end(), "NCDS DTC") == 2);
    CHECK(std::count(derivations.begin(), derivations.end(), "NCDS DTN") == 1);
    CHECK(std::count(derivations.begin(), derivations.end(), "NCDS STUDY_DAY") == 1);

    // byte-identical CSV against the golden file
    SolutionTable renamed = table;
    renamed.vars = {"Input Data Stage", "Input Variable",  "Derivation",
                    "Derivation Rule",  "Output Variable", "Output Data Stage"};
    CHECK(to_csv(renamed) == read_file(fixture_path("golden/table2.csv")));
}

TEST_CASE("evaluate: empty store gives zero rows") {
    auto store = make_store();
    auto table = evaluate(parse_query("SELECT ?x WHERE { ?x ?p ?o }"), store);
    CHECK(table.rows.empty());
}

TEST_CASE("evaluate: duplicate joins survive without DISTINCT and collapse with it") {
    auto store = make_store();
    // two quads in different graphs produce two identical projections of ?s
    store.insert({Iri{"http://x/s"}, Iri{"http://x/p"}, Iri{"http://x/o1"}, Iri{"http://g/1"}});
    store.insert({Iri{"http://x/s"}, Iri{"http://x/p"}, Iri{"http://x/o2"}, Iri{"http://g/1"}});

    auto bag = evaluate(parse_query("SELECT ?s WHERE { ?s <http://x/p> ?o }"), store);
    CHECK(bag.rows.size() == 2);
    auto collapsed =
        evaluate(parse_query("SELECT DISTINCT ?s WHERE { ?s <http://x/p> ?o }"), store);
    CHECK(collapsed.rows.size() == 1);

    // brute-force enumeration of the two-pattern join over the same data
    auto joined = evaluate(
        parse_query("SELECT ?a ?b WHERE { ?s <http://x/p> ?a . ?s <http://x/p> ?b }"), store);
    CHECK(joined.rows.size() == 4);
}

TEST_CASE("evaluate: numeric-aware ORDER BY") {
    auto store = make_store();
    for (int stage : {10, 4, 7}) {
        store.insert({Iri{"http://x/v" + std::to_string(stage)}, Iri{"http://x/stage"},
                      Literal{std::to_string(stage), rdf::xsd::integer()}, Iri{"http://g/1"}});
    }
    auto table = evaluate(
        parse_query("SELECT ?s ?n WHERE { ?s <http://x/stage> ?n } ORDER BY ?n ?s"), store);
    REQUIRE(table.rows.size() == 3);
    CHECK(rdf::term_text(*table.rows[0][1]) == "4");
    CHECK(rdf::term_text(*table.rows[1][1]) == "7");
    CHECK(rdf::term_text(*table.rows[2][1]) == "10"); // codepoint order would put "10" first
}

TEST_CASE("evaluate: join order independence on permuted patterns") {
    auto store = make_store();
    testsupport::load_ucm(store);
    auto prefixes = prefixes_with_default();
    const char* variant_a =
        "SELECT ?v ?d ?o WHERE { ?v :isInputOf ?d . ?d :hasOutput ?o . ?o :dataStage ?st }";
    const char* variant_b =
        "SELECT ?v ?d ?o WHERE { ?o :dataStage ?st . ?d :hasOutput ?o . ?v :isInputOf ?d }";
    auto rows_of = [&](const char* text) {
        auto table = evaluate(parse_query(text, prefixes), store);
        std::vector<std::string> rows;
        for (const auto& row : table.rows) {
            std::string key;
            for (const auto& cell : row) key += (cell ? rdf::term_text(*cell) : "") + "|";
            rows.push_back(key);
        }
        std::sort(rows.begin(), rows.end());
        return rows;
    };
    CHECK(rows_of(variant_a) == rows_of(variant_b));
}

TEST_CASE("results: sparql-json layout") {
    auto store = make_store();
    store.insert({Iri{"http://x/s"}, Iri{"http://x/p"},
                  Literal{"5", rdf::xsd::integer()}, Iri{"http://g/1"}});
    store.insert({Iri{"http://x/s"}, Iri{"http://x/q"}, Iri{"http://x/o"}, Iri{"http://g/1"}});

    auto empty = to_sparql_json(evaluate(
        parse_query("SELECT ?z WHERE { ?z <http://x/none> ?w }"), store));
    auto doc = nlohmann::json::parse(empty);
    CHECK(doc.contains("head"));
    CHECK(doc["head"]["vars"].size() == 1);
    CHECK(doc["results"]["bindings"].empty());

    auto one = nlohmann::json::parse(to_sparql_json(
        evaluate(parse_query("SELECT ?s ?o WHERE { ?s <http://x/q> ?o }"), store)));
    REQUIRE(one["results"]["bindings"].size() == 1);
    CHECK(one["results"]["bindings"][0]["o"]["type"] == "uri");

    auto lit = nlohmann::json::parse(to_sparql_json(
        evaluate(parse_query("SELECT ?o WHERE { ?s <http://x/p> ?o }"), store)));
    CHECK(lit["results"]["bindings"][0]["o"]["type"] == "literal");
    CHECK(lit["results"]["bindings"][0]["o"]["datatype"] ==
          "http://www.w3.org/2001/XMLSchema#integer");
}

TEST_CASE("catalogue: register, list, run by name") {
    auto store = make_store();
    testsupport::load_ucm(store);
    const auto& cfg = test_config();

    auto uri = register_query(store, cfg, "ucm-lineage",
                              read_file(fixture_path("queries/ucm_lineage.rq")),
                              {"lineage", "https://www.cdisc.org/standards/foundational/sdtm"});
    CHECK(uri.value.find("/query/ucm-lineage") != std::string::npos);

    auto entries = query_catalogue(store, cfg);
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].name == "ucm-lineage");
    CHECK(entries[0].annotations.size() == 2);

    auto table = run_named_query(store, cfg, "ucm-lineage");
    CHECK(table.rows.size() == 8);

    CHECK_THROWS_AS((void)run_named_query(store, cfg, "nope"), Error);
}

TEST_CASE("catalogue: unparseable text stores nothing") {
    auto store = make_store();
    const auto& cfg = test_config();
    auto before = store.size();
    CHECK_THROWS_AS((void)register_query(store, cfg, "bad", "SELECT WHERE {"), Error);
    CHECK(store.size() == before);
    CHECK(query_catalogue(store, cfg).empty());
}
