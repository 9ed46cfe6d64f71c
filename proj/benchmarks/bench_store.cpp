#include <benchmark/benchmark.h>

#include <random>

#include "dgkit/config.hpp"
#include "dgkit/lineage/model.hpp"
#include "dgkit/rdf/store.hpp"
#include "dgkit/rdf/turtle.hpp"

using namespace dgkit;

namespace {

// synthetic model: `n` variables with conceptual parents, 2.5n opaque derivations
void build_graph(rdf::GraphStore& store, const ToolkitConfig& cfg, std::size_t n) {
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

void BM_Load(benchmark::State& state) {
    auto cfg = ToolkitConfig::builtin_example();
    rdf::GraphStore seed(cfg.graph_base, cfg.default_graph);
    build_graph(seed, cfg, static_cast<std::size_t>(state.range(0)));
    auto quads = seed.all_quads();
    for (auto _ : state) {
        rdf::GraphStore store(cfg.graph_base, cfg.default_graph);
        benchmark::DoNotOptimize(store.load(quads, "bench.ttl"));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(quads.size()));
}
BENCHMARK(BM_Load)->Arg(1000)->Arg(4000);

void BM_MatchPredicateBound(benchmark::State& state) {
    auto cfg = ToolkitConfig::builtin_example();
    rdf::GraphStore store(cfg.graph_base, cfg.default_graph);
    build_graph(store, cfg, static_cast<std::size_t>(state.range(0)));
    auto predicate = cfg.vocab().transformation_rule();
    std::size_t count = 0;
    for (auto _ : state) {
        count = 0;
        store.for_each_match(std::nullopt, predicate, std::nullopt, std::nullopt,
                             [&](const rdf::Term&, const rdf::Iri&, const rdf::Term&,
                                 const rdf::Iri&) { ++count; });
        benchmark::DoNotOptimize(count);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(count));
}
BENCHMARK(BM_MatchPredicateBound)->Arg(1000)->Arg(10000);

void BM_MatchSubjectBound(benchmark::State& state) {
    auto cfg = ToolkitConfig::builtin_example();
    rdf::GraphStore store(cfg.graph_base, cfg.default_graph);
    build_graph(store, cfg, static_cast<std::size_t>(state.range(0)));
    auto subject = rdf::Term{cfg.mint("fullyqualifiedelement", "V42")};
    for (auto _ : state)
        benchmark::DoNotOptimize(store.match(subject));
}
BENCHMARK(BM_MatchSubjectBound)->Arg(10000);

void BM_TurtleParse(benchmark::State& state) {
    auto cfg = ToolkitConfig::builtin_example();
    rdf::GraphStore store(cfg.graph_base, cfg.default_graph);
    build_graph(store, cfg, 1000);
    std::string text = rdf::serialize_turtle(
        store.match(std::nullopt, std::nullopt, std::nullopt, rdf::Iri{cfg.default_graph}));
    rdf::Iri graph{"https://x/g"};
    for (auto _ : state)
        benchmark::DoNotOptimize(rdf::parse_turtle(text, graph));
    state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_TurtleParse);

} // namespace

BENCHMARK_MAIN();
