#include <benchmark/benchmark.h>

#include <random>

#include "dgkit/config.hpp"
#include "dgkit/lineage/model.hpp"
#include "dgkit/lineage/traversal.hpp"
#include "dgkit/rdf/store.hpp"
#include "dgkit/sparql/query.hpp"

using namespace dgkit;

namespace {

struct SyntheticModel {
    ToolkitConfig cfg = ToolkitConfig::builtin_example();
    rdf::GraphStore store{cfg.graph_base, cfg.default_graph};

    explicit SyntheticModel(std::size_t n) {
        lineage::UcmModel model(store, cfg);
        auto v = cfg.vocab();
        std::vector<rdf::Iri> variables;
        for (std::size_t i = 0; i < n; ++i) {
            char label[16];
            std::snprintf(label, sizeof label, "C.%05zu", i);
            rdf::Iri parent = cfg.mint("conceptualelement", "C" + std::to_string(i));
            store.insert({parent, rdf::vocab::rdf_type(), v.concept_class(),
                          rdf::Iri{cfg.default_graph}});
            store.insert({parent, rdf::vocab::skos_pref_label(), rdf::Literal{label},
                          rdf::Iri{cfg.default_graph}});
            lineage::VariableNode var;
            var.uri = cfg.mint("fullyqualifiedelement", "V" + std::to_string(i));
            var.standard = "NCDS";
            var.domain = "SYN";
            var.name = "V" + std::to_string(i);
            var.data_stage = 4 + static_cast<int>(i % 4);
            var.fully_qualified_label = "NCDS.SYN.V" + std::to_string(i) + " [Synthetic]";
            var.broader = parent;
            model.register_variable(var);
            variables.push_back(var.uri);
        }
        std::mt19937_64 rng(7);
        for (std::size_t i = 0; i < n * 5 / 2; ++i) {
            lineage::Derivation d;
            d.uri = cfg.mint("derivation", "OPQ" + std::to_string(i));
            d.name = "SYN TRANSFORM";
            d.rule_text = "opaque rule " + std::to_string(i);
            d.rule_kind = lineage::RuleKind::Opaque;
            d.inputs = {variables[rng() % variables.size()]};
            d.outputs = {variables[rng() % variables.size()]};
            model.register_derivation(d);
        }
    }
};

void BM_ConceptualRollup(benchmark::State& state) {
    SyntheticModel synthetic(static_cast<std::size_t>(state.range(0)));
    lineage::UcmModel model(synthetic.store, synthetic.cfg);
    for (auto _ : state)
        benchmark::DoNotOptimize(lineage::conceptual_rollup(model, "C\\.001[0-9][0-9]"));
}
BENCHMARK(BM_ConceptualRollup)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_SimpleJoin(benchmark::State& state) {
    SyntheticModel synthetic(static_cast<std::size_t>(state.range(0)));
    auto prefixes = sparql::well_known_prefixes();
    prefixes[""] = synthetic.cfg.vocab().property_base;
    auto query = sparql::parse_query(
        "SELECT ?v ?d WHERE { ?v :isInputOf ?d . ?d :transformationRule ?r }", prefixes);
    for (auto _ : state)
        benchmark::DoNotOptimize(sparql::evaluate(query, synthetic.store));
}
BENCHMARK(BM_SimpleJoin)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_QueryParse(benchmark::State& state) {
    auto cfg = ToolkitConfig::builtin_example();
    auto prefixes = sparql::well_known_prefixes();
    prefixes[""] = cfg.vocab().property_base;
    const std::string text =
        "SELECT DISTINCT ?a ?b WHERE { ?a :isInputOf ?d . ?d :hasOutput ?b . "
        "FILTER(REGEX(?a,\"V1\")) } ORDER BY ?a ?b";
    for (auto _ : state)
        benchmark::DoNotOptimize(sparql::parse_query(text, prefixes));
}
BENCHMARK(BM_QueryParse);

} // namespace

BENCHMARK_MAIN();
