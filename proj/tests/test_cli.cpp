#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <nlohmann/json.hpp>

namespace {

using nlohmann::json;

struct RunOut {
    int code = -1;
    std::string out;
};

RunOut run_cli(const std::string& args, const std::string& env = "")
{
    std::string cmd = env + " " + std::string(GBFTK_CLI_PATH) + " " + args +
                      " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunOut r;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe))
        r.out.append(buf, got);
    int rc = pclose(pipe);
    r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

// Minimal JSON-schema checker covering the subset the shipped schema uses:
// type (incl. union types), required, properties, items, enum, $ref into
// #/definitions, pattern.
class SchemaChecker {
public:
    explicit SchemaChecker(json schema) : root_(std::move(schema)) {}

    bool valid(const json& value, const json& schema, std::string* why) const
    {
        if (schema.contains("$ref")) {
            const std::string ref = schema["$ref"];
            const std::string prefix = "#/definitions/";
            REQUIRE(ref.rfind(prefix, 0) == 0);
            return valid(value, root_["definitions"][ref.substr(prefix.size())], why);
        }
        if (schema.contains("type") && !type_ok(value, schema["type"])) {
            if (why) *why = "type mismatch at " + value.dump().substr(0, 40);
            return false;
        }
        if (schema.contains("enum")) {
            bool hit = false;
            for (const auto& e : schema["enum"]) hit = hit || e == value;
            if (!hit) {
                if (why) *why = "enum mismatch: " + value.dump();
                return false;
            }
        }
        if (schema.contains("pattern") && value.is_string()) {
            if (!std::regex_match(value.get<std::string>(),
                                  std::regex(schema["pattern"].get<std::string>()))) {
                if (why) *why = "pattern mismatch: " + value.dump();
                return false;
            }
        }
        if (value.is_object()) {
            if (schema.contains("required"))
                for (const auto& key : schema["required"])
                    if (!value.contains(key.get<std::string>())) {
                        if (why) *why = "missing required key " + key.dump();
                        return false;
                    }
            if (schema.contains("properties"))
                for (auto it = schema["properties"].begin();
                     it != schema["properties"].end(); ++it)
                    if (value.contains(it.key()) &&
                        !valid(value[it.key()], it.value(), why))
                        return false;
        }
        if (value.is_array() && schema.contains("items"))
            for (const auto& elem : value)
                if (!valid(elem, schema["items"], why)) return false;
        return true;
    }

    bool valid_root(const json& value, std::string* why) const
    {
        return valid(value, root_, why);
    }

    const json& definition(const std::string& name) const
    {
        return root_["definitions"].at(name);
    }

    const json& root() const { return root_; }

private:
    json root_;

    static bool type_ok(const json& v, const json& type)
    {
        if (type.is_array()) {
            for (const auto& t : type)
                if (type_ok(v, t)) return true;
            return false;
        }
        const std::string t = type.get<std::string>();
        if (t == "object") return v.is_object();
        if (t == "array") return v.is_array();
        if (t == "string") return v.is_string();
        if (t == "integer") return v.is_number_integer();
        if (t == "number") return v.is_number();
        if (t == "boolean") return v.is_boolean();
        if (t == "null") return v.is_null();
        return false;
    }
};

const SchemaChecker& schema()
{
    static SchemaChecker checker = [] {
        std::ifstream in(std::string(GBFTK_SOURCE_DIR) + "/docs/report-schema.json");
        REQUIRE(in.good());
        json s;
        in >> s;
        return SchemaChecker(std::move(s));
    }();
    return checker;
}

void check_envelope(const json& j, const std::string& command)
{
    std::string why;
    CHECK_MESSAGE(schema().valid_root(j, &why), why);
    CHECK(j["command"] == command);
}

std::filesystem::path write_temp(const std::string& name, const std::string& text)
{
    auto dir = std::filesystem::temp_directory_path() / "gbftk_cli_test";
    std::filesystem::create_directories(dir);
    auto path = dir / name;
    std::ofstream(path) << text;
    return path;
}

const char* kTrivialFixture = R"(gbf-fixture v1
p=5
g=2
invariants=
vector 1 =
vector 2 =
pairing = 2,1
provenance = synthetic: trivial
)";

const char* kC3Fixture = R"(gbf-fixture v1
p=7
g=2
invariants=3
vector 1 = 1
vector 2 = 2
pairing = 2,1
provenance = synthetic: C3
)";

}  // namespace

TEST_CASE("certify: exit codes and schema-valid certificates")
{
    auto ok = run_cli("certify --n 3 --p 1049177");
    CHECK(ok.code == 0);
    json j = json::parse(ok.out);
    check_envelope(j, "certify");
    std::string why;
    CHECK_MESSAGE(schema().valid(j["results"], schema().definition("certificate"), &why), why);
    CHECK(j["results"]["verdict"] == "NonexistenceCertified");

    auto inconclusive = run_cli("certify --n 3 --p 89");
    CHECK(inconclusive.code == 10);
    CHECK(json::parse(inconclusive.out)["results"]["verdict"] == "Inconclusive");

    CHECK(run_cli("certify --n 4 --p 89").code == 2);
    CHECK(run_cli("certify --n 3 --p 91").code == 2);
    CHECK(run_cli("certify").code == 2);
}

TEST_CASE("certify is deterministic modulo timing")
{
    auto a = json::parse(run_cli("certify --n 3 --p 1050169").out);
    auto b = json::parse(run_cli("certify --n 3 --p 1050169").out);
    a.erase("timing_ms");
    b.erase("timing_ms");
    CHECK(a == b);
}

TEST_CASE("wieferich: pinned output")
{
    auto r = run_cli("wieferich --q 2 --limit 10000");
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    check_envelope(j, "wieferich");
    std::string why;
    CHECK_MESSAGE(
        schema().valid(j["results"], schema().definition("wieferich_results"), &why),
        why);
    CHECK(j["results"]["primes"] == json::array({"1093", "3511"}));
}

TEST_CASE("scan and smallest: pinned output")
{
    auto r = run_cli(
        "scan --g 8 --f-parity odd --mod8 1 --certify-n 3 --from 1048576 --count 5");
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    check_envelope(j, "scan");
    std::string why;
    CHECK_MESSAGE(
        schema().valid(j["results"], schema().definition("scan_results"), &why), why);
    std::vector<std::string> primes;
    for (const auto& h : j["results"]["primes"]) primes.push_back(h["p"]);
    CHECK(primes == std::vector<std::string>{"1049177", "1050169", "1050233",
                                             "1050473", "1051961"});

    auto s = run_cli("smallest --n 3 --g 8 --f-parity odd --mod8 1");
    CHECK(s.code == 0);
    CHECK(json::parse(s.out)["results"]["p"] == "1049177");
}

TEST_CASE("density: schema and --no-bound")
{
    auto r = run_cli("density --q 2 --g 8 --x 10000 --no-bound");
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    check_envelope(j, "density");
    std::string why;
    CHECK_MESSAGE(
        schema().valid(j["results"], schema().definition("density_results"), &why),
        why);
    CHECK(j["results"]["m_count"] == 40);
    CHECK(j["results"]["pi_x"] == 1229);
}

TEST_CASE("gbf-search: results and budget refusal")
{
    auto r = run_cli("gbf-search --n 2 --t 2");
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    check_envelope(j, "gbf-search");
    std::string why;
    CHECK_MESSAGE(
        schema().valid(j["results"], schema().definition("gbf_search_results"), &why),
        why);
    CHECK(j["results"]["count"] == 8);

    CHECK(run_cli("gbf-search --n 1 --t 6").code == 0);
    CHECK(run_cli("gbf-search --n 2 --t 6").code == 20);

    // above 100 hits the table list is suppressed, count stays exact
    auto big = json::parse(run_cli("gbf-search --n 2 --t 3").out);
    CHECK(big["results"]["count"] == 486);
    CHECK(big["results"]["tables"].is_null());
}

TEST_CASE("cyclo-verify: pass and refusal exit codes")
{
    auto ok = run_cli("cyclo-verify --p 7 --subgroup 1,2,4");
    CHECK(ok.code == 0);
    json j = json::parse(ok.out);
    check_envelope(j, "cyclo-verify");
    std::string why;
    CHECK_MESSAGE(
        schema().valid(j["results"], schema().definition("delta_report"), &why), why);
    CHECK(j["results"]["checks"]["all_pass"] == true);

    CHECK(run_cli("cyclo-verify --p 5 --subgroup 1").code == 0);
    CHECK(run_cli("cyclo-verify --p 7 --subgroup 1,6").code == 2);
    CHECK(run_cli("cyclo-verify --p 4 --subgroup 1").code == 2);
}

TEST_CASE("budget and input edge codes")
{
    CHECK(run_cli("wieferich --q 2 --limit 200000000").code == 20);  // over ceiling
    CHECK(run_cli("density --q 2 --g 8 --x 200000000").code == 20);
    CHECK(run_cli("scan --from 2 --count 1").code == 2);   // lo must be >= 3
    CHECK(run_cli("scan --from 11 --to 9 --count 1").code == 2);
    CHECK(run_cli("gbf-search --n 1 --t 1").code == 2);
    CHECK(run_cli("smallest --n 3 --g 8 --f-parity any").code == 2);
}

TEST_CASE("relsearch: witness, max-np and scanset batch")
{
    auto trivial = write_temp("trivial.fx", kTrivialFixture);
    auto r = run_cli("relsearch --fixture " + trivial.string() + " --n 7");
    CHECK(r.code == 10);  // solvable: nothing proven
    json j = json::parse(r.out);
    check_envelope(j, "relsearch");
    CHECK(j["results"]["solvable"] == true);
    CHECK(j["results"]["witness"]["exponents"] == json::array({0}));
    CHECK(j["fixture_provenance"] == "synthetic: trivial");

    auto c3 = write_temp("c3.fx", kC3Fixture);
    auto m = run_cli("relsearch --fixture " + c3.string() + " --max-np");
    CHECK(m.code == 0);
    CHECK(json::parse(m.out)["results"]["max_np"]["n_p"] == 1);

    auto single = run_cli("relsearch --fixture " + c3.string() + " --n 1");
    CHECK(single.code == 0);  // unsolvable: certified for n = 1
    CHECK(json::parse(single.out)["results"]["solvable"] == false);

    CHECK(run_cli("relsearch --fixture /nonexistent.fx --n 1").code == 2);
    CHECK(run_cli("relsearch --fixture " + c3.string()).code == 2);

    // batch mode over a scanset: p=7 has a fixture, p=11 does not
    auto dir = trivial.parent_path();
    std::ofstream(dir / "p7.fx") << kC3Fixture;
    auto scanset = write_temp("set.txt", "# test scan set\n7\n11\n");
    auto batch = run_cli("relsearch --scanset " + scanset.string() + " --n 1",
                         "GBF_FIXTURE_DIR=" + dir.string());
    CHECK(batch.code == 10);  // partial: one fixture missing
    json bj = json::parse(batch.out);
    CHECK(bj["results"]["verified"] == 1);
    CHECK(bj["results"]["missing"] == 1);
    CHECK(bj["results"]["partial"] == true);
}

TEST_CASE("malformed fixtures exit with a usage error")
{
    auto bad = write_temp("bad.fx",
                          "gbf-fixture v1\np=7\ng=2\ninvariants=3\nvector 1 = 1\n"
                          "vector 2 = 1\npairing = 2,1\nprovenance = x\n");
    auto r = run_cli("relsearch --fixture " + bad.string() + " --n 1");
    CHECK(r.code == 2);
}

TEST_CASE("--table mode prints text, not JSON")
{
    auto r = run_cli("--table wieferich --q 2 --limit 10000");
    CHECK(r.code == 0);
    CHECK(r.out == "1093\n3511\n");
}

TEST_CASE("--jsonl mode emits one object per result row")
{
    auto r = run_cli("--jsonl scan --g 8 --f-parity odd --mod8 1 --certify-n 3 "
                     "--from 1048576 --count 2");
    CHECK(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::vector<std::string> primes;
    while (std::getline(lines, line)) {
        json row = json::parse(line);
        primes.push_back(row["p"]);
        CHECK(row["certificate"]["verdict"] == "NonexistenceCertified");
    }
    CHECK(primes == std::vector<std::string>{"1049177", "1050169"});
}
