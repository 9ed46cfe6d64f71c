// End-to-end checks over the built CLI binary: exit-code contract, golden
// output, determinism, and the enricher ingest -> load -> report loop.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct CmdResult {
    int exit_code = -1;
    std::string output;
};

std::string fixture(const std::string& rel) {
    return std::string(DGKIT_FIXTURE_DIR) + "/" + rel;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CmdResult run_cli(const std::string& args) {
    std::string cmd = std::string(DGKIT_CLI_PATH) + " --config " + fixture("config.json") +
                      " " + args + " 2>/dev/null";
    CmdResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buffer[4096];
    std::size_t n;
    while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.output.append(buffer, n);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string with_ucm(const std::string& args) {
    return "--load " + fixture("ucm.ttl") + " " + args;
}

} // namespace

TEST_CASE("cli: rollup CSV is byte-identical to the golden file and deterministic") {
    auto first = run_cli(with_ucm("lineage rollup --pattern \"AE.AEEN\" --csv"));
    CHECK(first.exit_code == 0);
    CHECK(first.output == read_file(fixture("golden/table2.csv")));
    auto second = run_cli(with_ucm("lineage rollup --pattern \"AE.AEEN\" --csv"));
    CHECK(second.output == first.output);
}

TEST_CASE("cli: exit codes follow the contract") {
    // 0: success
    CHECK(run_cli(with_ucm("report glossary")).exit_code == 0);
    // 1: usage error
    CHECK(run_cli("no-such-command").exit_code == 1);
    // 2: validation findings
    auto dirty = run_cli(with_ucm("validate --data " + fixture("demographics_dirty.csv") +
                                  " --shape " + fixture("demographics_dirty_shape.json")));
    CHECK(dirty.exit_code == 2);
    CHECK(dirty.output.find("6 finding(s)") != std::string::npos);
    // 3: internal error (missing input file)
    CHECK(run_cli("load /no/such/file.ttl").exit_code == 3);
}

TEST_CASE("cli: clean validate exits zero with an empty report") {
    auto clean = run_cli(with_ucm("validate --data " + fixture("demographics.csv") +
                                  " --shape " + fixture("demographics_shape.json")));
    CHECK(clean.exit_code == 0);
    CHECK(clean.output.find("OK") != std::string::npos);
}

TEST_CASE("cli: loading a file twice reports identical counts") {
    auto result = run_cli("load " + fixture("ucm.ttl") + " " + fixture("ucm.ttl"));
    CHECK(result.exit_code == 0);
    std::istringstream lines(result.output);
    std::string first, second;
    std::getline(lines, first);
    std::getline(lines, second);
    CHECK_FALSE(first.empty());
    CHECK(first == second); // clear-then-add makes the reload indistinguishable
}

TEST_CASE("cli: uri build/parse/check") {
    auto built = run_cli("uri build --domain development --subdomain clinical "
                         "--system globalmetadata --timestamp v1 "
                         "--type fullyqualifiedelement --entity DR_AA_AACAT");
    CHECK(built.exit_code == 0);
    CHECK(built.output ==
          "https://data.example.org/r1/development/clinical/globalmetadata/v1/"
          "fullyqualifiedelement/DR_AA_AACAT\n");

    auto parsed = run_cli("uri parse " + built.output.substr(0, built.output.size() - 1));
    CHECK(parsed.exit_code == 0);
    CHECK(parsed.output.find("entity_path:        DR_AA_AACAT") != std::string::npos);

    CHECK(run_cli("uri check https://data.example.org/r1/development/clinical/"
                  "globalmetadata/v1/fullyqualifiedelement/DR_AA_AACAT")
              .exit_code == 0);
    CHECK(run_cli("uri check https://example.org/foreign").exit_code == 2);
}

TEST_CASE("cli: query json output is a well-formed results document") {
    auto result = run_cli(with_ucm("query " + fixture("queries/ucm_lineage.rq") + " --json"));
    CHECK(result.exit_code == 0);
    auto doc = nlohmann::json::parse(result.output);
    CHECK(doc["head"]["vars"].size() == 6);
    CHECK(doc["results"]["bindings"].size() == 8);
}

TEST_CASE("cli: enricher round-trip recovers labels and definitions") {
    auto ingested = run_cli("ingest enricher " + fixture("enricher_clean.csv"));
    REQUIRE(ingested.exit_code == 0);

    fs::path ttl = fs::temp_directory_path() / "dgkit_cli_enricher.ttl";
    {
        std::ofstream out(ttl, std::ios::binary);
        out << ingested.output;
    }
    auto report = run_cli("--load " + ttl.string() + " report glossary");
    fs::remove(ttl);
    CHECK(report.exit_code == 0);
    for (const char* needle :
         {"Adverse event intake", "Safety database", "Case narrative",
          "Process of receiving and triaging adverse event reports"})
        CHECK(report.output.find(needle) != std::string::npos);

    auto rejected = run_cli("ingest enricher " + fixture("enricher_dirty.csv"));
    CHECK(rejected.exit_code == 2);
    CHECK(rejected.output.find("label-local-uniqueness") != std::string::npos);
}

TEST_CASE("cli: lineage exec derives the study day") {
    auto result = run_cli(with_ucm(
        "lineage exec --records " + fixture("ae_records.csv") +
        " --target https://data.example.org/r1/development/clinical/globalmetadata/v1/"
        "fullyqualifiedelement/DR_AE_AEENDY"));
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("S001,Headache,2004-05-21,13:45,2004-05-19,2004-05-21T13:45,"
                             "12559.572917,3") != std::string::npos);
}

TEST_CASE("cli: anonymise is deterministic for a fixed seed") {
    std::string cmd = "--load " + fixture("ucm.ttl") + " --load " + fixture("governance.ttl") +
                      " anonymise --data " + fixture("ae_records.csv") + " --seed 2024";
    auto first = run_cli(cmd);
    auto second = run_cli(cmd);
    CHECK(first.exit_code == 0);
    CHECK(first.output == second.output);
    CHECK(first.output.find("2004-05-21") == std::string::npos); // dates moved
}

TEST_CASE("cli: check run flags the planted missing value") {
    auto result = run_cli("--load " + fixture("ucm.ttl") + " --load " +
                          fixture("governance.ttl") + " check run --data " +
                          fixture("ae_records.csv"));
    CHECK(result.exit_code == 2);
    CHECK(result.output.find("rows 5") != std::string::npos);
}

TEST_CASE("cli: query register emits loadable catalogue turtle") {
    auto registered = run_cli("query --register ucm-lineage " +
                              fixture("queries/ucm_lineage.rq") + " --annotate lineage");
    REQUIRE(registered.exit_code == 0);

    fs::path ttl = fs::temp_directory_path() / "dgkit_cli_catalogue.ttl";
    {
        std::ofstream out(ttl, std::ios::binary);
        out << registered.output;
    }
    auto list = run_cli("--load " + ttl.string() + " query --list");
    CHECK(list.output.find("ucm-lineage") != std::string::npos);

    auto run_named = run_cli("--load " + ttl.string() + " --load " + fixture("ucm.ttl") +
                             " query --name ucm-lineage --csv");
    fs::remove(ttl);
    CHECK(run_named.exit_code == 0);
    CHECK(run_named.output.find("NCDS STUDY_DAY") != std::string::npos);
}
