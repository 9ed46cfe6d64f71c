// dgkit - metadata governance toolkit CLI.
//
// Exit codes: 0 success, 1 usage error, 2 validation/QC findings, 3 internal.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "dgkit/config.hpp"
#include "dgkit/enricher.hpp"
#include "dgkit/errors.hpp"
#include "dgkit/etl/pipeline.hpp"
#include "dgkit/governance/governance.hpp"
#include "dgkit/lineage/interpreter.hpp"
#include "dgkit/lineage/traversal.hpp"
#include "dgkit/rdf/nquads.hpp"
#include "dgkit/rdf/store.hpp"
#include "dgkit/rdf/turtle.hpp"
#include "dgkit/rdf/vocab.hpp"
#include "dgkit/sparql/catalogue.hpp"
#include "dgkit/sparql/query.hpp"
#include "dgkit/terminology/glossary.hpp"
#include "dgkit/text.hpp"
#include "dgkit/uri/governed_uri.hpp"

namespace {

namespace fs = std::filesystem;
using namespace dgkit;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFindings = 2;
constexpr int kExitInternal = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Session {
    std::string config_path;
    std::vector<std::string> load_files;

    ToolkitConfig config;
    std::unique_ptr<rdf::GraphStore> store;

    void open() {
        if (config_path.empty()) {
            if (const char* env = std::getenv("DGKIT_CONFIG")) config_path = env;
            else if (fs::exists("dgkit.json")) config_path = "dgkit.json";
        }
        config = config_path.empty() ? ToolkitConfig::builtin_example()
                                     : ToolkitConfig::from_json_file(config_path);
        store = std::make_unique<rdf::GraphStore>(config.graph_base, config.default_graph);
        for (const auto& file : config.preload) load_file(file, false);
        for (const auto& file : load_files) load_file(file, false);
    }

    rdf::LoadReport load_file(const std::string& path, bool verbose = true) {
        std::string content = read_file(path);
        std::vector<rdf::Quad> quads;
        if (text::ends_with(path, ".nq") || text::ends_with(path, ".nt")) {
            quads = rdf::parse_nquads(content, rdf::Iri{config.default_graph});
        } else {
            quads = rdf::parse_turtle(content, store->graph_iri_for_source(path));
        }
        auto report = store->load(quads, path);
        if (verbose)
            std::cout << "loaded " << report.graph.value << " added=" << report.added
                      << " deduped=" << report.deduped << " inversed=" << report.inversed
                      << "\n";
        return report;
    }

    std::map<std::string, std::string> query_prefixes() const {
        auto prefixes = sparql::well_known_prefixes();
        prefixes[""] = config.vocab().property_base;
        return prefixes;
    }

    // rule target URI -> dataset column, via each variable's name token
    std::map<std::string, std::string> target_columns(
        const std::vector<governance::GovernanceRule>& rules,
        const std::vector<std::string>& overrides) const {
        lineage::UcmModel model(*store, config);
        std::map<std::string, std::string> mapping;
        for (const auto& rule : rules)
            for (const auto& target : rule.targets)
                if (auto name = model.variable_name(target)) mapping[target.value] = *name;
        for (const auto& entry : overrides) {
            auto eq = entry.find('=');
            if (eq == std::string::npos)
                throw Error("--map expects <variable-uri>=<column>: " + entry);
            mapping[entry.substr(0, eq)] = entry.substr(eq + 1);
        }
        return mapping;
    }
};

void write_output(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw IoError("cannot write " + out_path);
    out << content;
}

int run(int argc, char** argv) {
    CLI::App app{"dgkit - governed knowledge-graph toolkit for clinical metadata"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "print help for every command");

    Session session;
    app.add_option("--config", session.config_path,
                   "toolkit configuration file (default: $DGKIT_CONFIG or ./dgkit.json)");
    app.add_option("--load", session.load_files,
                   "file loaded into the store before the command runs (repeatable)");

    int exit_code = kExitOk;

    // ---- load ----
    auto* cmd_load =
        app.add_subcommand("load", "load Turtle/N-Quads files, print a report per file");
    static std::vector<std::string> load_args;
    cmd_load->add_option("files", load_args, "files to load")->required();
    cmd_load->callback([&] {
        session.open();
        for (const auto& file : load_args) session.load_file(file);
    });

    // ---- ingest ----
    auto* cmd_ingest = app.add_subcommand("ingest", "convert captured knowledge to Turtle");
    cmd_ingest->require_subcommand(1);

    auto* ingest_enricher = cmd_ingest->add_subcommand(
        "enricher", "QC an enricher document; emit Turtle when it passes");
    static std::string enricher_path;
    static bool enricher_csv = false;
    ingest_enricher->add_option("path", enricher_path, "bundle directory or #tab-sectioned file")
        ->required();
    ingest_enricher->add_flag("--csv", enricher_csv, "emit QC findings as CSV");
    ingest_enricher->callback([&] {
        session.open();
        auto result = enricher::ingest(enricher_path, session.config);
        if (!result.qc.ok()) {
            std::cout << (enricher_csv ? enricher::qc_report_csv(result.qc)
                                       : enricher::qc_report_text(result.qc));
            exit_code = kExitFindings;
            return;
        }
        std::cout << result.turtle;
    });

    auto* ingest_mappings =
        cmd_ingest->add_subcommand("mappings", "convert a from,to,strength CSV to Turtle");
    static std::string mappings_path;
    ingest_mappings->add_option("csv", mappings_path)->required();
    ingest_mappings->callback([&] {
        session.open();
        terminology::Glossary glossary(*session.store, session.config);
        std::vector<rdf::Quad> quads;
        for (const auto& link :
             terminology::Glossary::parse_mapping_csv(read_file(mappings_path))) {
            auto link_quads = glossary.mapping_quads(link);
            quads.insert(quads.end(), link_quads.begin(), link_quads.end());
        }
        std::cout << rdf::serialize_turtle(quads);
    });

    auto* ingest_cascade = cmd_ingest->add_subcommand(
        "cascade", "convert a principle,issue,rule,target CSV to Turtle");
    static std::string cascade_path;
    ingest_cascade->add_option("csv", cascade_path)->required();
    ingest_cascade->callback([&] {
        session.open();
        std::cout << rdf::serialize_turtle(
            governance::Cascade::import_csv_quads(read_file(cascade_path), session.config));
    });

    // ---- etl ----
    auto* cmd_etl = app.add_subcommand("etl", "semantic ETL pipeline");
    cmd_etl->require_subcommand(1);
    auto* etl_run = cmd_etl->add_subcommand("run", "extract, transform, validate, emit, load");
    static std::string etl_data, etl_shape, etl_transforms;
    static bool etl_force = false, etl_schema_only = false, etl_report_csv = false;
    etl_run->add_option("--data", etl_data, "dataset (CSV or JSON records)")->required();
    etl_run->add_option("--shape", etl_shape, "table shape file")->required();
    etl_run->add_option("--transforms", etl_transforms, "value transform list (JSON)");
    etl_run->add_flag("--force", etl_force, "load conforming rows despite findings");
    etl_run->add_flag("--schema-only", etl_schema_only,
                      "skip record-level literal checks (datatype lexical forms)");
    etl_run->add_flag("--csv", etl_report_csv, "emit the validation report as CSV");
    etl_run->callback([&] {
        session.open();
        auto shape = etl::shape_from_json_file(etl_shape, session.config);
        std::vector<etl::ValueTransform> transforms;
        if (!etl_transforms.empty()) transforms = etl::transforms_from_json_file(etl_transforms);
        auto result = etl::run_pipeline(*session.store, session.config, etl_data, transforms,
                                        shape, etl_force, !etl_schema_only);
        std::cout << (etl_report_csv ? etl::report_csv(result.report)
                                     : etl::report_text(result.report));
        if (result.did_load) {
            std::cout << "loaded " << result.loaded.graph.value
                      << " added=" << result.loaded.added
                      << " skipped_rows=" << result.rows_skipped << "\n";
        } else {
            std::cout << "not loaded (findings present; use --force to load clean rows)\n";
        }
        if (!result.report.ok()) exit_code = kExitFindings;
    });

    auto* cmd_validate = app.add_subcommand("validate", "validate a dataset against its shape");
    static std::string val_data, val_shape;
    static bool val_csv = false, val_schema_only = false;
    cmd_validate->add_option("--data", val_data)->required();
    cmd_validate->add_option("--shape", val_shape)->required();
    cmd_validate->add_flag("--csv", val_csv, "emit the report as CSV");
    cmd_validate->add_flag("--schema-only", val_schema_only, "skip record-level literal checks");
    cmd_validate->callback([&] {
        session.open();
        auto shape = etl::shape_from_json_file(val_shape, session.config);
        auto frame = etl::extract(val_data);
        auto report =
            etl::validate_all(frame, shape, *session.store, session.config, !val_schema_only);
        std::cout << (val_csv ? etl::report_csv(report) : etl::report_text(report));
        if (!report.ok()) exit_code = kExitFindings;
    });

    // ---- query ----
    auto* cmd_query = app.add_subcommand("query", "run or manage catalogued queries");
    static std::string query_file, query_name, query_register;
    static std::vector<std::string> query_annotations;
    static bool query_json = false, query_csv = false, query_list = false;
    cmd_query->add_option("file", query_file, "query file");
    cmd_query->add_option("--name", query_name, "run a registered query by name");
    cmd_query->add_flag("--list", query_list, "list the query catalogue");
    cmd_query->add_option("--register", query_register,
                          "register the query file under this name; prints catalogue Turtle");
    cmd_query->add_option("--annotate", query_annotations,
                          "annotation IRI or term for --register (repeatable)");
    cmd_query->add_flag("--json", query_json, "emit results as a SPARQL-JSON document");
    cmd_query->add_flag("--csv", query_csv, "emit results as CSV");
    cmd_query->callback([&] {
        session.open();
        if (query_list) {
            for (const auto& entry : sparql::query_catalogue(*session.store, session.config)) {
                std::cout << entry.name << "  <" << entry.uri.value << ">";
                if (!entry.annotations.empty())
                    std::cout << "  [" << text::join(entry.annotations, ", ") << "]";
                std::cout << "\n";
            }
            return;
        }
        if (!query_register.empty()) {
            if (query_file.empty()) throw Error("--register needs a query file");
            std::string body = read_file(query_file);
            sparql::parse_query(body, session.query_prefixes()); // refuse unparseable text
            std::cout << rdf::serialize_turtle(sparql::catalogue_quads(
                session.config, query_register, body, query_annotations));
            return;
        }
        sparql::SolutionTable table;
        if (!query_name.empty()) {
            table = sparql::run_named_query(*session.store, session.config, query_name);
        } else {
            if (query_file.empty()) throw Error("query needs a file, --name or --list");
            auto query = sparql::parse_query(read_file(query_file), session.query_prefixes());
            table = sparql::evaluate(query, *session.store);
        }
        if (query_json) std::cout << sparql::to_sparql_json(table);
        else if (query_csv) std::cout << sparql::to_csv(table);
        else std::cout << sparql::to_text(table);
    });

    // ---- lineage ----
    auto* cmd_lineage = app.add_subcommand("lineage", "variable lineage and execution");
    cmd_lineage->require_subcommand(1);

    auto* lin_rollup = cmd_lineage->add_subcommand(
        "rollup", "stage/variable/derivation table for a conceptual pattern");
    static std::string rollup_pattern;
    static bool rollup_csv_flag = false;
    lin_rollup->add_option("--pattern", rollup_pattern, "regex over conceptual labels")
        ->required();
    lin_rollup->add_flag("--csv", rollup_csv_flag);
    lin_rollup->callback([&] {
        session.open();
        lineage::UcmModel model(*session.store, session.config);
        auto table = lineage::conceptual_rollup(model, rollup_pattern);
        std::cout << (rollup_csv_flag ? lineage::rollup_csv(table)
                                      : lineage::rollup_text(table));
    });

    auto* lin_var = cmd_lineage->add_subcommand("var", "technical lineage of one variable");
    static std::string lin_var_uri;
    lin_var->add_option("uri", lin_var_uri)->required();
    lin_var->callback([&] {
        session.open();
        lineage::UcmModel model(*session.store, session.config);
        auto result = lineage::technical_lineage(model, rdf::Iri{lin_var_uri});
        std::cout << "producing:\n";
        for (const auto& d : result.producing)
            std::cout << "  " << d.name << "  <" << d.uri.value << ">  rule: " << d.rule_text
                      << "\n";
        if (result.producing.empty()) std::cout << "  (none)\n";
        std::cout << "consuming:\n";
        for (const auto& d : result.consuming)
            std::cout << "  " << d.name << "  <" << d.uri.value << ">  rule: " << d.rule_text
                      << "\n";
        if (result.consuming.empty()) std::cout << "  (none)\n";
    });

    auto* lin_path = cmd_lineage->add_subcommand("path", "business lineage paths");
    static std::string lin_from, lin_to;
    lin_path->add_option("from", lin_from)->required();
    lin_path->add_option("to", lin_to)->required();
    lin_path->callback([&] {
        session.open();
        lineage::UcmModel model(*session.store, session.config);
        auto paths = lineage::business_lineage(model, rdf::Iri{lin_from}, rdf::Iri{lin_to});
        for (const auto& path : paths) {
            for (std::size_t i = 0; i < path.size(); ++i) {
                if (i) std::cout << " -> ";
                std::cout << (i % 2 ? "[" + path[i].value + "]" : path[i].value);
            }
            std::cout << "\n";
        }
        if (paths.empty()) std::cout << "(no path)\n";
    });

    auto* lin_exec =
        cmd_lineage->add_subcommand("exec", "run the derivation chain over clinical records");
    static std::string exec_records, exec_target, exec_start, exec_out;
    static std::string exec_refvar = "RFSTDTC";
    lin_exec->add_option("--records", exec_records, "records CSV")->required();
    lin_exec->add_option("--target", exec_target, "target variable URI")->required();
    lin_exec->add_option("--start", exec_start, "fallback reference start date (ISO)");
    lin_exec->add_option("--ref-var", exec_refvar,
                         "record column carrying each subject's reference start");
    lin_exec->add_option("--out", exec_out, "write the derived records CSV here");
    lin_exec->callback([&] {
        session.open();
        lineage::UcmModel model(*session.store, session.config);
        std::vector<std::string> columns;
        auto records = lineage::records_from_csv(read_file(exec_records), columns);
        lineage::ExecutionContext ctx;
        ctx.study_day_ref_var = exec_refvar;
        if (!exec_start.empty()) {
            auto date = dates::parse_iso_date(exec_start);
            if (!date) throw Error("--start is not a calendar date: " + exec_start);
            ctx.reference_start = *date;
        }
        auto out =
            lineage::execute_pipeline(model, std::move(records), rdf::Iri{exec_target}, ctx);
        write_output(lineage::records_to_csv(out, columns), exec_out);
    });

    // ---- check / anonymise ----
    auto* cmd_check = app.add_subcommand("check", "run governance checks");
    cmd_check->require_subcommand(1);
    auto* check_run = cmd_check->add_subcommand("run", "apply stored checks to a dataset");
    static std::string check_data;
    static std::vector<std::string> check_map;
    static bool check_csv_flag = false;
    check_run->add_option("--data", check_data)->required();
    check_run->add_option("--map", check_map, "<variable-uri>=<column> override (repeatable)");
    check_run->add_flag("--csv", check_csv_flag);
    check_run->callback([&] {
        session.open();
        auto frame = etl::extract(check_data);
        auto rules = governance::read_rules(*session.store, session.config);
        auto mapping = session.target_columns(rules, check_map);
        // a mapping only counts when the dataset actually has the column
        for (auto it = mapping.begin(); it != mapping.end();) {
            if (!frame.column_index(it->second)) it = mapping.erase(it);
            else ++it;
        }
        auto report = governance::run_checks(*session.store, session.config, frame, mapping);
        std::cout << (check_csv_flag ? governance::check_report_csv(report)
                                     : governance::check_report_text(report));
        if (!report.findings.empty()) exit_code = kExitFindings;
    });

    auto* cmd_anon = app.add_subcommand("anonymise", "apply anonymisation rules to a dataset");
    static std::string anon_data, anon_out, anon_audit;
    static std::uint64_t anon_seed = 0;
    static std::vector<std::string> anon_map;
    cmd_anon->add_option("--data", anon_data)->required();
    cmd_anon->add_option("--seed", anon_seed, "seed for deterministic noise/offsets")->required();
    cmd_anon->add_option("--map", anon_map, "<variable-uri>=<column> override (repeatable)");
    cmd_anon->add_option("--out", anon_out, "write the anonymised CSV here");
    cmd_anon->add_option("--audit", anon_audit, "write audit quads (Turtle) here");
    cmd_anon->callback([&] {
        session.open();
        auto frame = etl::extract(anon_data);
        std::vector<governance::GovernanceRule> rules;
        for (auto& rule : governance::read_rules(*session.store, session.config)) {
            if (governance::is_executable(rule.check.kind) &&
                rule.check.kind != governance::CheckKind::MissingValue)
                rules.push_back(std::move(rule));
        }
        auto mapping = session.target_columns(rules, anon_map);
        auto result = governance::anonymise(frame, rules, anon_seed, mapping, session.config);
        write_output(etl::frame_to_csv(result.frame), anon_out);
        if (!anon_audit.empty()) {
            std::ofstream out(anon_audit, std::ios::binary);
            if (!out) throw IoError("cannot write " + anon_audit);
            out << rdf::serialize_turtle(result.audit);
        }
    });

    // ---- report ----
    auto* cmd_report = app.add_subcommand("report", "governance and glossary reports");
    cmd_report->require_subcommand(1);

    auto* report_fair = cmd_report->add_subcommand("fair", "FAIR metrics per dataset");
    static std::vector<std::string> fair_datasets;
    static bool fair_csv_flag = false;
    report_fair->add_option("--dataset", fair_datasets,
                            "dataset IRI (repeatable; default: every typed dataset)");
    report_fair->add_flag("--csv", fair_csv_flag);
    report_fair->callback([&] {
        session.open();
        std::vector<rdf::Iri> datasets;
        for (const auto& d : fair_datasets) datasets.push_back(rdf::Iri{d});
        if (datasets.empty()) {
            auto v = session.config.vocab();
            for (const auto& subject :
                 session.store->subjects(rdf::vocab::rdf_type(), rdf::Term{v.dataset_class()}))
                if (auto* iri = std::get_if<rdf::Iri>(&subject)) datasets.push_back(*iri);
        }
        auto rows = governance::fair_report(*session.store, session.config, datasets);
        std::cout << (fair_csv_flag ? governance::fair_csv(rows) : governance::fair_text(rows));
    });

    auto* report_gov = cmd_report->add_subcommand("governance", "full cascade dump");
    static bool gov_csv_flag = false;
    report_gov->add_flag("--csv", gov_csv_flag);
    report_gov->callback([&] {
        session.open();
        governance::Cascade cascade(*session.store, session.config);
        std::cout << (gov_csv_flag ? cascade.report_csv() : cascade.report_text());
    });

    auto* report_glossary = cmd_report->add_subcommand("glossary", "business glossary");
    static bool glossary_ttl_flag = false;
    report_glossary->add_flag("--turtle", glossary_ttl_flag, "emit Turtle instead of CSV");
    report_glossary->callback([&] {
        session.open();
        terminology::Glossary glossary(*session.store, session.config);
        std::cout << (glossary_ttl_flag ? glossary.report_turtle() : glossary.report_csv());
    });

    // ---- uri ----
    auto* cmd_uri = app.add_subcommand("uri", "governed URI tooling");
    cmd_uri->require_subcommand(1);

    auto* uri_build = cmd_uri->add_subcommand("build", "mint a governed URI");
    static std::string b_domain, b_subdomain, b_system, b_timestamp, b_type, b_standard;
    static std::vector<std::string> b_entity;
    uri_build->add_option("--domain", b_domain, "business domain")->required();
    uri_build->add_option("--subdomain", b_subdomain, "business subdomain")->required();
    uri_build->add_option("--system", b_system, "system of record")->required();
    uri_build->add_option("--timestamp", b_timestamp, "v<digits> or ISO date")->required();
    uri_build->add_option("--type", b_type, "type segment");
    uri_build->add_option("--standard", b_standard, "standard segment");
    uri_build->add_option("--entity", b_entity, "entity path, parent first (repeatable)")
        ->required();
    uri_build->callback([&] {
        session.open();
        uri::GovernedUri parts;
        parts.authority = session.config.registry.authority;
        parts.release = session.config.release;
        parts.business_domain = b_domain;
        parts.business_subdomain = b_subdomain;
        parts.system_of_record = b_system;
        auto ts = uri::VersionOrDate::parse(b_timestamp);
        if (!ts) throw uri::UriError(uri::UriErrorCode::InvalidTimestamp, b_timestamp);
        parts.timestamp = *ts;
        if (!b_type.empty()) parts.type_segment = b_type;
        if (!b_standard.empty()) parts.standard_segment = b_standard;
        parts.entity_path = b_entity;
        std::cout << uri::build_uri(parts, session.config.registry).value << "\n";
    });

    auto* uri_parse = cmd_uri->add_subcommand("parse", "decompose a governed URI");
    static std::string parse_target;
    uri_parse->add_option("iri", parse_target)->required();
    uri_parse->callback([&] {
        session.open();
        auto parts = uri::parse_uri(rdf::Iri{parse_target}, session.config.registry);
        std::cout << "authority:          " << parts.authority << "\n"
                  << "release:            " << parts.release << "\n"
                  << "business_domain:    " << parts.business_domain << "\n"
                  << "business_subdomain: " << parts.business_subdomain << "\n"
                  << "system_of_record:   " << parts.system_of_record << "\n"
                  << "timestamp:          " << parts.timestamp.text << "\n";
        if (parts.type_segment) std::cout << "type:               " << *parts.type_segment << "\n";
        if (parts.standard_segment)
            std::cout << "standard:           " << *parts.standard_segment << "\n";
        std::cout << "entity_path:        " << text::join(parts.entity_path, "/") << "\n";
    });

    auto* uri_check = cmd_uri->add_subcommand("check", "validate a URI against the grammar");
    static std::string check_target;
    uri_check->add_option("iri", check_target)->required();
    uri_check->callback([&] {
        session.open();
        auto outcome = uri::validate_uri(rdf::Iri{check_target}, session.config.registry);
        if (outcome.ok()) {
            std::cout << "ok\n";
            return;
        }
        for (const auto& v : outcome.violations) std::cout << "violation: " << v << "\n";
        exit_code = kExitFindings;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
    return exit_code;
}

} // namespace

int main(int argc, char** argv) {
    return run(argc, argv);
}
