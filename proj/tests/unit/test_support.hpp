#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "dgkit/config.hpp"
#include "dgkit/rdf/store.hpp"
#include "dgkit/rdf/turtle.hpp"

namespace testsupport {

inline std::string fixture_path(const std::string& rel) {
    return std::string(DGKIT_FIXTURE_DIR) + "/" + rel;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline const dgkit::ToolkitConfig& test_config() {
    static dgkit::ToolkitConfig config =
        dgkit::ToolkitConfig::from_json_file(fixture_path("config.json"));
    return config;
}

inline dgkit::rdf::LoadReport load_turtle_file(dgkit::rdf::GraphStore& store,
                                               const std::string& rel) {
    std::string path = fixture_path(rel);
    auto quads = dgkit::rdf::parse_turtle(read_file(path),
                                          store.graph_iri_for_source(path));
    return store.load(quads, path);
}

inline dgkit::rdf::GraphStore make_store() {
    const auto& cfg = test_config();
    return dgkit::rdf::GraphStore(cfg.graph_base, cfg.default_graph);
}

inline void load_ucm(dgkit::rdf::GraphStore& store) {
    load_turtle_file(store, "ucm.ttl");
}

} // namespace testsupport
