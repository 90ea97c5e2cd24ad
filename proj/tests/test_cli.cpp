#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

// End-to-end tests that drive the installed CLI binary through a shell.
// ALTZETA_CLI_PATH and ALTZETA_SOURCE_DIR are injected by the build.

namespace {

using nlohmann::json;

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::filesystem::path temp_file(const std::string& tag) {
    static int counter = 0;
    return std::filesystem::temp_directory_path() /
           ("altzeta_cli_" + tag + "_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
}

RunResult run_cli(const std::string& args) {
    std::filesystem::path errfile = temp_file("stderr");
    std::string cmd =
        std::string("\"") + ALTZETA_CLI_PATH + "\" " + args + " 2>" + errfile.string();
    RunResult r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream ef(errfile);
    std::stringstream ss;
    ss << ef.rdbuf();
    r.err = ss.str();
    std::filesystem::remove(errfile);
    return r;
}

std::string last_line(const std::string& text) {
    size_t end = text.find_last_not_of('\n');
    if (end == std::string::npos) return "";
    size_t start = text.rfind('\n', end);
    return text.substr(start == std::string::npos ? 0 : start + 1,
                       end - (start == std::string::npos ? 0 : start + 1) + 1);
}

// Minimal structural validator for the subset of JSON Schema the report
// schema uses: type, required, properties, additionalProperties (bool),
// items, enum, minimum, minLength.
bool validates(const json& schema, const json& value, std::string& why) {
    if (schema.contains("type")) {
        const std::string& t = schema["type"].get_ref<const std::string&>();
        bool ok = (t == "object" && value.is_object()) ||
                  (t == "array" && value.is_array()) ||
                  (t == "string" && value.is_string()) ||
                  (t == "integer" && value.is_number_integer()) ||
                  (t == "number" && value.is_number());
        if (!ok) {
            why = "expected type " + t + ", got " + std::string(value.type_name());
            return false;
        }
    }
    if (schema.contains("enum")) {
        bool found = false;
        for (const json& v : schema["enum"])
            if (v == value) found = true;
        if (!found) {
            why = "value " + value.dump() + " not in enum";
            return false;
        }
    }
    if (schema.contains("minimum") && value.is_number() &&
        value.get<double>() < schema["minimum"].get<double>()) {
        why = "value below minimum";
        return false;
    }
    if (schema.contains("minLength") && value.is_string() &&
        value.get_ref<const std::string&>().size() < schema["minLength"].get<size_t>()) {
        why = "string shorter than minLength";
        return false;
    }
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const json& key : schema["required"])
                if (!value.contains(key.get_ref<const std::string&>())) {
                    why = "missing required key " + key.dump();
                    return false;
                }
        const json props = schema.value("properties", json::object());
        bool closed = !schema.value("additionalProperties", true);
        for (const auto& [key, sub] : value.items()) {
            auto it = props.find(key);
            if (it == props.end()) {
                if (closed) {
                    why = "unexpected key '" + key + "'";
                    return false;
                }
                continue;
            }
            if (!validates(*it, sub, why)) {
                why = "at key '" + key + "': " + why;
                return false;
            }
        }
    }
    if (value.is_array() && schema.contains("items")) {
        size_t i = 0;
        for (const json& item : value) {
            if (!validates(schema["items"], item, why)) {
                why = "at item " + std::to_string(i) + ": " + why;
                return false;
            }
            ++i;
        }
    }
    return true;
}

json report_schema() {
    std::ifstream f(std::string(ALTZETA_SOURCE_DIR) + "/docs/report-schema.json");
    REQUIRE(f.good());
    return json::parse(f);
}

} // namespace

TEST_CASE("help lists the subcommands") {
    RunResult r = run_cli("--help");
    CHECK(r.code == 0);
    CHECK(r.out.find("eval") != std::string::npos);
    CHECK(r.out.find("verify") != std::string::npos);
    CHECK(r.out.find("table") != std::string::npos);
}

TEST_CASE("eval prints the value and a machine-readable line") {
    RunResult r = run_cli("--prec 30 --no-cache eval b1");
    CHECK(r.code == 0);
    CHECK(r.out.find("-0.69314718055994530941723212145") != std::string::npos);
    json j = json::parse(last_line(r.out));
    CHECK(j["index"] == "b1");
    CHECK(j["precision_digits"] == 30);
    CHECK(!j["method"].get<std::string>().empty());
    CHECK(std::stod(j["error_bound"].get<std::string>()) < 1e-25);
}

TEST_CASE("eval routes reducible indices through their closed form") {
    RunResult r = run_cli("--prec 40 --no-cache eval b2,1");
    CHECK(r.code == 0);
    json j = json::parse(last_line(r.out));
    CHECK(j["method"] == "closed-form");
    // zeta(3)/8
    CHECK(j["value"].get<std::string>().substr(0, 20) == "0.150257112894949285");
}

TEST_CASE("eval rejects bad input with exit code 2") {
    CHECK(run_cli("--no-cache eval x3").code == 2);       // parse error
    CHECK(run_cli("--no-cache eval 1,2").code == 2);      // divergent sum
    CHECK(run_cli("--no-cache eval b0").code == 2);       // zero exponent
}

TEST_CASE("eval reports an honest accuracy failure with exit code 3") {
    // No rewrite family covers 2,1,2 and its direct sum cannot reach 40
    // digits within budget, so the tool must refuse rather than guess.
    RunResult r = run_cli("--prec 40 --no-cache eval 2,1,2");
    CHECK(r.code == 3);
    CHECK(r.err.find("best bound") != std::string::npos);
}

TEST_CASE("reduce emits the rewrite with family and residue metadata") {
    RunResult r = run_cli("--no-cache reduce b1,2");
    CHECK(r.code == 0);
    json j = json::parse(last_line(r.out));
    CHECK(j["family"] == "interior-two");
    CHECK(j["residues"].empty());
    std::string pretty = j["pretty"].get<std::string>();
    CHECK(pretty.find("zeta(3)") != std::string::npos);
    CHECK(pretty.find("zeta(2)") != std::string::npos);

    RunResult r2 = run_cli("--no-cache reduce b3,1");
    CHECK(r2.code == 0);
    json j2 = json::parse(last_line(r2.out));
    CHECK(j2["family"] == "alternating-head");
    CHECK(!j2["residues"].empty());
}

TEST_CASE("reduce --certify cross-checks the rewrite numerically") {
    RunResult r = run_cli("--prec 30 --no-cache reduce b3,1 --certify");
    CHECK(r.code == 0);
    json j = json::parse(last_line(r.out));
    CHECK(j["certify"]["status"] == "pass");

    RunResult ri = run_cli("--prec 30 --no-cache reduce 'J(1,1)' --certify");
    CHECK(ri.code == 0);
    json ji = json::parse(last_line(ri.out));
    CHECK(ji["family"] == "closed-J");
    CHECK(ji["certify"]["status"] == "pass");
}

TEST_CASE("reduce refuses unsupported targets with exit code 4") {
    RunResult r = run_cli("--no-cache reduce b1,3,1");
    CHECK(r.code == 4);
    CHECK(r.err.find("two-sided relation") != std::string::npos);
    CHECK(run_cli("--no-cache reduce b2,b1").code == 4);
    CHECK(run_cli("--no-cache table head --k 9 --m 9").code == 4);
}

TEST_CASE("table certifies rows against direct evaluation") {
    RunResult r = run_cli("--no-cache table interior-two --k 1:2 --m 1 --certify");
    CHECK(r.code == 0);
    CHECK(r.out.find("certify: pass") != std::string::npos);
    CHECK(r.out.find("certify: fail") == std::string::npos);

    // The plain outer-2 rows are certified against the zeta value they equal.
    RunResult rp = run_cli("--no-cache table plain --k 2 --m 0:1 --certify");
    CHECK(rp.code == 0);
    CHECK(rp.out.find("certify: fail") == std::string::npos);
}

TEST_CASE("verify reports validate against the published schema") {
    RunResult r = run_cli("--prec 20 --no-cache verify exact");
    CHECK(r.code == 0);
    json report = json::parse(r.out);
    std::string why;
    CHECK_MESSAGE(validates(report_schema(), report, why), why);
    CHECK(report["suite"] == "exact");
    CHECK(report["totals"]["fail"] == 0);
    CHECK(report["totals"]["cases"] == report["cases"].size());
}

TEST_CASE("verify writes the report to a file with --out") {
    std::filesystem::path out = temp_file("report");
    RunResult r = run_cli("--prec 20 --no-cache verify exact --out " + out.string());
    CHECK(r.code == 0);
    CHECK(r.err.find("suite 'exact'") != std::string::npos);
    std::ifstream f(out);
    REQUIRE(f.good());
    json report = json::parse(f);
    std::string why;
    CHECK_MESSAGE(validates(report_schema(), report, why), why);
    std::filesystem::remove(out);
}

TEST_CASE("verify output is deterministic") {
    RunResult a = run_cli("--prec 20 --no-cache verify exact");
    RunResult b = run_cli("--prec 20 --no-cache verify exact");
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    json ja = json::parse(a.out);
    json jb = json::parse(b.out);
    ja.erase("wall_seconds");
    jb.erase("wall_seconds");
    CHECK(ja == jb);
}

TEST_CASE("verify surfaces the known reference-table mismatches") {
    // Two reference-table entries disagree with the values their own
    // recurrences force; the suite must report exactly those two, not hide
    // them and not flag anything else.
    RunResult r = run_cli("--prec 40 --no-cache verify fixtures");
    CHECK(r.code == 1);
    json report = json::parse(r.out);
    CHECK(report["totals"]["fail"] == 2);
    std::vector<std::string> failed;
    for (const json& c : report["cases"])
        if (c["status"] == "fail") failed.push_back(c["label"].get<std::string>());
    REQUIRE(failed.size() == 2);
    CHECK(failed[0].find("b1,1,1,b1") != std::string::npos);
    CHECK(failed[1].find("b1,1,b1,b1") != std::string::npos);
}

TEST_CASE("the constant store persists derivations across runs") {
    std::filesystem::path cache = temp_file("cache");
    std::string args = "--prec 40 --cache " + cache.string() + " --stats eval b3,1,1";
    RunResult first = run_cli(args);
    REQUIRE(first.code == 0);
    json s1 = json::parse(last_line(first.err));
    CHECK(s1["derivations"].get<long>() > 0);

    RunResult second = run_cli(args);
    REQUIRE(second.code == 0);
    json s2 = json::parse(last_line(second.err));
    CHECK(s2["derivations"].get<long>() == 0);
    CHECK(s2["hits"].get<long>() > 0);

    // Same value both times, bit for bit.
    CHECK(json::parse(last_line(first.out))["value"] ==
          json::parse(last_line(second.out))["value"]);
    std::filesystem::remove(cache);
}
