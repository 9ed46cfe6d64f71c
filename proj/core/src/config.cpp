#include "dgkit/config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dgkit/errors.hpp"
#include "dgkit/text.hpp"

namespace dgkit {

namespace fs = std::filesystem;

ToolkitConfig ToolkitConfig::builtin_example() {
    ToolkitConfig cfg;
    cfg.registry.authority = "https://data.example.org";
    cfg.registry.releases = {"r1"};
    cfg.registry.business_domains = {"development", "research", "commercial"};
    cfg.registry.business_subdomains = {"clinical", "preclinical", "biomarker"};
    cfg.registry.systems_of_record = {"globalmetadata", "clinicaldb", "standardsrepo"};
    cfg.registry.type_segments = {"fullyqualifiedelement", "conceptualelement", "derivation",
                                  "referencelist",         "concept",           "definition",
                                  "property",              "class",             "dataset",
                                  "query",                 "activity",          "check",
                                  "rule",                  "issue",             "principle",
                                  "subject"};
    cfg.registry.standard_segments = {"sdtm", "adam", "ncds", "novdd", "gsk", "cdisc"};
    cfg.upper_ontology_classes = {"Process",      "System",   "Dataset",      "Role",
                                  "Organisation", "Project",  "Variable",     "Derivation",
                                  "Standard",     "ReferenceList", "Concept"};
    cfg.graph_base = cfg.registry.authority;
    cfg.default_graph = cfg.registry.authority + "/graphs/default";
    auto v = cfg.vocab();
    cfg.facet_access = v.access_procedure().value;
    cfg.facet_standard = v.uses_standard().value;
    cfg.facet_license = v.license().value;
    cfg.facet_provenance = v.provenance().value;
    return cfg;
}

ToolkitConfig ToolkitConfig::from_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(ss.str());
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    fs::path base = fs::path(path).parent_path();
    auto resolve = [&](const std::string& p) {
        fs::path candidate(p);
        if (candidate.is_absolute()) return candidate.string();
        return (base / candidate).string();
    };

    ToolkitConfig cfg = builtin_example();

    if (j.contains("segment_registry")) {
        std::string reg_path = resolve(j.at("segment_registry").get<std::string>());
        if (!fs::exists(reg_path)) throw ConfigError("config: missing registry file " + reg_path);
        cfg.registry = uri::SegmentRegistry::from_json_file(reg_path);
    }
    if (j.contains("class_list")) {
        std::string cls_path = resolve(j.at("class_list").get<std::string>());
        std::ifstream cls(cls_path);
        if (!cls) throw ConfigError("config: missing class list file " + cls_path);
        cfg.upper_ontology_classes.clear();
        std::string line;
        while (std::getline(cls, line)) {
            line = text::trim(line);
            if (!line.empty() && line[0] != '#') cfg.upper_ontology_classes.push_back(line);
        }
        if (cfg.upper_ontology_classes.empty())
            throw ConfigError("config: class list is empty: " + cls_path);
    }

    cfg.graph_base = j.value("graph_base", cfg.registry.authority);
    while (!cfg.graph_base.empty() && cfg.graph_base.back() == '/') cfg.graph_base.pop_back();
    cfg.default_graph = j.value("default_graph", cfg.graph_base + "/graphs/default");

    if (j.contains("context")) {
        const auto& c = j.at("context");
        cfg.release = c.value("release", cfg.release);
        cfg.business_domain = c.value("business_domain", cfg.business_domain);
        cfg.business_subdomain = c.value("business_subdomain", cfg.business_subdomain);
        cfg.system_of_record = c.value("system_of_record", cfg.system_of_record);
        cfg.timestamp = c.value("timestamp", cfg.timestamp);
    }

    cfg.multi_value_delimiter = j.value("multi_value_delimiter", cfg.multi_value_delimiter);
    cfg.redaction_token = j.value("redaction_token", cfg.redaction_token);
    cfg.max_paths = j.value("max_paths", cfg.max_paths);
    cfg.max_depth = j.value("max_depth", cfg.max_depth);

    auto v = cfg.vocab();
    cfg.facet_access = v.access_procedure().value;
    cfg.facet_standard = v.uses_standard().value;
    cfg.facet_license = v.license().value;
    cfg.facet_provenance = v.provenance().value;
    if (j.contains("fair_facets")) {
        const auto& f = j.at("fair_facets");
        cfg.facet_access = f.value("accessible", cfg.facet_access);
        cfg.facet_standard = f.value("interoperable", cfg.facet_standard);
        cfg.facet_license = f.value("license", cfg.facet_license);
        cfg.facet_provenance = f.value("provenance", cfg.facet_provenance);
    }

    if (j.contains("preload")) {
        for (const auto& p : j.at("preload")) {
            std::string resolved = resolve(p.get<std::string>());
            if (!fs::exists(resolved)) throw ConfigError("config: missing preload file " + resolved);
            cfg.preload.push_back(resolved);
        }
    }
    return cfg;
}

uri::GovernedUri ToolkitConfig::context_parts() const {
    uri::GovernedUri parts;
    parts.authority = registry.authority;
    parts.release = release;
    parts.business_domain = business_domain;
    parts.business_subdomain = business_subdomain;
    parts.system_of_record = system_of_record;
    auto ts = uri::VersionOrDate::parse(timestamp);
    if (!ts) throw ConfigError("config: bad context timestamp '" + timestamp + "'");
    parts.timestamp = *ts;
    return parts;
}

rdf::vocab::Vocabulary ToolkitConfig::vocab() const {
    std::string base = registry.authority + "/" + release + "/" + business_domain + "/" +
                       business_subdomain + "/" + system_of_record + "/" + timestamp + "/";
    return rdf::vocab::Vocabulary{base + "property/", base + "class/"};
}

rdf::Iri ToolkitConfig::mint(const std::string& type_segment,
                             const std::vector<std::string>& entity_path) const {
    auto parts = context_parts();
    parts.type_segment = type_segment;
    parts.entity_path = entity_path;
    return uri::build_uri(parts, registry);
}

rdf::Iri ToolkitConfig::mint(const std::string& type_segment, const std::string& entity) const {
    return mint(type_segment, std::vector<std::string>{entity});
}

} // namespace dgkit
