#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <latcalc/report.hpp>
#include <latcalc/verify.hpp>

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#ifdef LATCALC_CLI_PATH
#include <sys/wait.h>
#endif

using namespace latcalc;

namespace {

CheckResult make_check(std::string id, bool pass) {
    CheckResult c;
    c.id = std::move(id);
    c.anchor = "anchor-" + c.id;
    c.pass = pass;
    c.detail = pass ? "fine" : "broken";
    return c;
}

Report two_check_report() {
    Report r;
    r.config = {{"n", 1}};
    r.add(make_check("alpha", true));
    CheckResult failing = make_check("beta", false);
    failing.witness = {{"sample", 3}};
    r.add(failing);
    return r;
}

} // namespace

TEST_CASE("reports round trip through json and dump deterministically") {
    const Report r = two_check_report();
    CHECK_FALSE(r.all_pass());

    const Report s = Report::from_json(r.to_json());
    CHECK(s.to_json() == r.to_json());
    CHECK(s.checks.size() == 2);
    CHECK(s.checks[1].witness.at("sample") == 3);

    const std::string d = dump_report(r);
    CHECK(d == dump_report(s));
    CHECK(d.back() == '\n');
    CHECK(r.to_json().at("pass") == false);
}

TEST_CASE("duplicate ids are rejected when building a report") {
    Report r = two_check_report();
    CHECK_THROWS_AS(r.add(make_check("alpha", true)), std::logic_error);
}

TEST_CASE("foreign schemas are rejected") {
    nlohmann::json j = two_check_report().to_json();
    j["schema"] = "something-else/9";
    CHECK_THROWS_AS(Report::from_json(j), std::runtime_error);
    CHECK_THROWS_AS(Report::from_json(nlohmann::json::array()), std::runtime_error);
}

TEST_CASE("merging collapses identical checks and flags conflicts") {
    const Report r = two_check_report();
    const Report merged = merge_reports({{"first.json", r}, {"second.json", r}});
    CHECK(merged.checks.size() == r.checks.size());
    CHECK(merged.config.at("merged_from") == nlohmann::json({"first.json", "second.json"}));

    Report conflicting;
    conflicting.add(make_check("alpha", false));
    CHECK_THROWS_WITH_AS(
        (void)merge_reports({{"first.json", r}, {"second.json", conflicting}}),
        "conflicting check id 'alpha' from 'first.json' and 'second.json'",
        std::runtime_error);
}

TEST_CASE("the table footer counts failures") {
    const std::string table = render_table(two_check_report());
    CHECK(table.find("FAIL") != std::string::npos);
    CHECK(table.rfind("2 checks, 1 failed\n") == table.size() - 19);
}

TEST_CASE("the output path never enters the report bytes") {
    RunConfig a, b;
    a.out = "here.json";
    b.out = "elsewhere.json";
    CHECK(a.to_json() == b.to_json());
    CHECK_FALSE(a.to_json().contains("out"));
}

TEST_CASE("suites are deterministic for a fixed configuration") {
    RunConfig cfg;
    cfg.n = 1;
    cfg.samples = 2;
    cfg.k_max = 2;
    cfg.degree = 2;
    const Report r1 = run_scalar_suite(cfg);
    const Report r2 = run_scalar_suite(cfg);
    CHECK(dump_report(r1) == dump_report(r2));
    CHECK(r1.all_pass());
}

#ifdef LATCALC_CLI_PATH

namespace {

int run_cli(const std::string& args) {
    const std::string cmd =
        std::string("\"") + LATCALC_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    REQUIRE(WIFEXITED(rc));
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

} // namespace

TEST_CASE("the command line produces byte stable reports") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::current_path() / "cli-scratch";
    fs::remove_all(dir);
    fs::create_directories(dir);

    const std::string a = (dir / "a.json").string();
    const std::string b = (dir / "b.json").string();
    const std::string flags = "verify --n 1 --samples 2 --kmax 2 --degree 2 --seed 99 --out ";
    CHECK(run_cli(flags + a) == 0);
    CHECK(run_cli(flags + b) == 0);
    CHECK_FALSE(slurp(a).empty());
    CHECK(slurp(a) == slurp(b));

    const std::string m = (dir / "merged.json").string();
    CHECK(run_cli("report " + a + " " + b + " --out " + m) == 0);
    const Report merged = Report::from_json(nlohmann::json::parse(slurp(m)));
    CHECK(merged.all_pass());
    CHECK_FALSE(merged.checks.empty());

    const std::string bad = (dir / "bad.json").string();
    {
        std::ofstream out(bad);
        out << "{";
    }
    CHECK(run_cli("report " + bad + " --out " + (dir / "x.json").string()) == 2);

    fs::remove_all(dir);
}

#endif
