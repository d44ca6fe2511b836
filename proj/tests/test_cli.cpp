#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path cli_path() {
    const char* p = std::getenv("LIMITWP_CLI");
    REQUIRE(p != nullptr);
    return p;
}

fs::path repo_root() { return fs::path(__FILE__).parent_path().parent_path(); }

struct RunResult {
    int exit_code;
    json report;
    std::string raw;
};

RunResult run_cli(const std::string& args) {
    fs::path out = fs::temp_directory_path() / "limitwp_cli_test_out.json";
    std::string cmd = cli_path().string() + " " + args + " > " + out.string() + " 2>&1";
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(rc);
    std::ifstream f(out);
    std::stringstream ss;
    ss << f.rdbuf();
    r.raw = ss.str();
    r.report = json::parse(r.raw, nullptr, /*allow_exceptions=*/false);
    return r;
}

fs::path write_input(const json& j, const std::string& name) {
    fs::path p = fs::temp_directory_path() / name;
    std::ofstream(p) << j.dump();
    return p;
}

}  // namespace

TEST_CASE("invariants subcommand") {
    auto r = run_cli("invariants --g1 2 --g2 3 --delta 2");
    REQUIRE(r.exit_code == 0);
    const json& res = r.report.at("results");
    CHECK(res.at("g") == 6);
    CHECK(res.at("ell") == json::array({2, 1}));
    CHECK(res.at("lambda") == json::array({2, 1}));
    CHECK(res.at("total_limit_degree") == 210);
    CHECK(res.at("irreducible") == false);
    CHECK(res.at("component_count") == 5);

    auto irr = run_cli("invariants --g1 1 --g2 1 --delta 2");
    REQUIRE(irr.exit_code == 0);
    CHECK(irr.report.at("results").at("irreducible") == true);

    auto bad = run_cli("invariants --g1 0 --g2 0 --delta 1");
    CHECK(bad.exit_code == 2);
    CHECK(bad.report.at("results").at("kind") == "precondition");
}

TEST_CASE("conditions subcommand flags the engineered failure") {
    fs::path in = repo_root() / "examples" / "conjugate-pair.json";
    auto r = run_cli("conditions --in " + in.string());
    CHECK(r.exit_code == 2);
    const json& res = r.report.at("results");
    CHECK(res.at("condition1").at("ok") == false);
    CHECK(res.at("condition1").at("failing_n") == 1);
    CHECK(res.at("condition3_via_plucker") == res.at("condition3").at("ok"));
    CHECK(res.at("generic") == false);
}

TEST_CASE("limit-divisor subcommand is exact and deterministic") {
    fs::path in = repo_root() / "examples" / "g0g0d3.json";
    auto a = run_cli("limit-divisor --in " + in.string());
    REQUIRE(a.exit_code == 0);
    const json& res = a.report.at("results");
    CHECK(res.at("divisor").at("total_degree") == 6);
    CHECK(res.at("expected_total_degree") == 6);
    auto b = run_cli("limit-divisor --in " + in.string());
    CHECK(a.report.at("results") == b.report.at("results"));  // byte-level determinism
}

TEST_CASE("ramification subcommand reports the canonical divisor") {
    json in;
    in["component"] = {{"kind", "hyperelliptic"},
                       {"f", {"1", "0", "0", "0", "0", "1"}},
                       {"marked", json::array()}};
    auto r = run_cli("ramification --in " + write_input(in, "cli_ram.json").string());
    REQUIRE(r.exit_code == 0);
    const json& res = r.report.at("results");
    CHECK(res.at("dim") == 2);
    CHECK(res.at("total_degree") == 6);
    long sum = 0;
    for (const auto& e : res.at("divisor").at("entries")) sum += e.at("degree").get<long>();
    CHECK(sum == 6);
}

TEST_CASE("h0 and smoothable subcommands") {
    std::ifstream f(repo_root() / "examples" / "g2g3d2.json");
    json base = json::parse(f);
    json sheaf = {{"side1", 3}, {"side2", -1}, {"glue", base.at("glue")}};

    json h0in = {{"g1", 2}, {"g2", 3}, {"delta", 2}, {"comp1", base.at("comp1")},
                 {"comp2", base.at("comp2")}, {"sheaf", sheaf}};
    auto h = run_cli("h0 --in " + write_input(h0in, "cli_h0.json").string());
    REQUIRE(h.exit_code == 0);
    CHECK(h.report.at("results").at("h0") == 6);
    CHECK(h.report.at("results").at("rho1_rank") == 6);

    json smin = h0in;
    smin["i"] = 1;
    auto s = run_cli("smoothable --in " + write_input(smin, "cli_sm.json").string());
    REQUIRE(s.exit_code == 0);
    CHECK(s.report.at("results").at("smoothable") == true);

    // a twist that is not principal relative to the reference sides
    json smbad = smin;
    smbad["sheaf"]["side1"] = {{"delta", 3}, {"infinity", 1},
                               {"points", {{{"x", smin["comp1"]["marked"][0][0]},
                                            {"y", smin["comp1"]["marked"][0][1]},
                                            {"mult", -1}}}}};
    auto sb = run_cli("smoothable --in " + write_input(smbad, "cli_smb.json").string());
    REQUIRE(sb.exit_code == 0);
    CHECK(sb.report.at("results").at("smoothable") == false);
}

TEST_CASE("orbit subcommand") {
    fs::path in = repo_root() / "examples" / "g0g0d3.json";
    auto r = run_cli("orbit --in " + in.string());
    REQUIRE(r.exit_code == 0);
    const json& res = r.report.at("results");
    CHECK(res.at("side1").at("fixed_point") == true);
    CHECK(res.at("pair").is_null());
}

TEST_CASE("chain subcommand round-trips its degree bookkeeping") {
    json in = {{"g1", 2}, {"g2", 3}, {"delta", 2}, {"mu", {"2", "1"}},
               {"lambda", {{"C2", 2}}}, {"i", 1}, {"search_i", 1}};
    auto r = run_cli("chain --in " + write_input(in, "cli_chain.json").string());
    REQUIRE(r.exit_code == 0);
    const json& res = r.report.at("results");
    CHECK(res.at("components") == 3);
    CHECK(res.at("genus") == 6);
    CHECK(res.at("mu_normalized") == json::array({2, 1}));
    long total = 0;
    for (const auto& d : res.at("degrees")) total += d.get<long>();
    CHECK(total == 2 * 6 - 2);
    CHECK(res.at("constraints").at("ok") == true);
    CHECK(res.at("search").at("complete") == true);
    CHECK(res.at("search").at("count").get<long>() >= 1);
}

TEST_CASE("schema errors exit with code 3") {
    auto missing = run_cli("h0 --in /nonexistent/input.json");
    CHECK(missing.exit_code == 3);
    CHECK(missing.report.at("results").at("kind") == "schema");

    fs::path broken = fs::temp_directory_path() / "cli_broken.json";
    std::ofstream(broken) << "{ not json";
    auto bad = run_cli("h0 --in " + broken.string());
    CHECK(bad.exit_code == 3);

    json wrong = {{"g1", 2}, {"g2", 3}, {"delta", 2}};  // missing components
    auto miss = run_cli("limit-divisor --in " + write_input(wrong, "cli_wrong.json").string());
    CHECK(miss.exit_code == 3);
}

TEST_CASE("selftest subcommand") {
    auto ok = run_cli("selftest --seed 5 --budget 3");
    REQUIRE(ok.exit_code == 0);
    CHECK(ok.report.at("results").at("ok") == true);

    auto fault = run_cli("selftest --seed 5 --budget 3 --inject-fault");
    CHECK(fault.exit_code == 4);
    CHECK(fault.report.at("results").at("failures").size() == 1);

    auto vacuous = run_cli("selftest --budget 0");
    CHECK(vacuous.exit_code == 0);
}
