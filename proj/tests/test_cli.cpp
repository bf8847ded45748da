#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

using nlohmann::json;

namespace {

std::string cli_path() {
    const char* p = std::getenv("QFAC_CLI");
    REQUIRE_MESSAGE(p != nullptr, "QFAC_CLI must point at the qfac binary");
    return p;
}

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args) {
    std::string tmp = (std::filesystem::temp_directory_path() / "qfac_cli_out.txt").string();
    std::string cmd = cli_path() + " " + args + " > " + tmp + " 2>&1";
    int rc = std::system(cmd.c_str());
    std::ifstream in(tmp);
    std::stringstream ss;
    ss << in.rdbuf();
    return RunResult{WEXITSTATUS(rc), ss.str()};
}

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
    return path;
}

} // namespace

TEST_CASE("audit bese emits the reference triples") {
    RunResult r = run("audit bese");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.output);
    REQUIRE(j["instances"].size() == 3);
    CHECK(j["instances"][0]["rho"] == 35);
    CHECK(j["instances"][0]["D2"] == 18);
    CHECK(j["instances"][2]["rho"] == 29);
    for (const auto& inst : j["instances"]) CHECK(inst["all_match"] == true);
}

TEST_CASE("audit lattice reports both gram variants") {
    RunResult r = run("audit lattice");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.output);
    CHECK(j["fixes_e"] == true);
    CHECK(j["fixes_h_minus_f_minus_e"] == true);
    CHECK(j["expansion"]["c0"] == -124);
    CHECK(j["alternate_gram_h2_6"]["integer_solutions"]["target6"]["solutions"][0] == 16);
    // a custom gram table reruns the audit
    auto gram = write_temp("qfac_gram.json",
                           R"({"hh":6,"hf":0,"he":2,"ff":-2,"fe":1,"ee":-2})");
    RunResult r2 = run("audit lattice --gram " + gram.string());
    REQUIRE(r2.exit_code == 0);
    json j2 = json::parse(r2.output);
    CHECK(j2["expansion"]["c0"] == -122);
}

TEST_CASE("malformed polynomial input exits 1") {
    auto path = write_temp("qfac_bad.txt", "field p=11\nF: x0^2 + *\n");
    RunResult r = run("analyze --input " + path.string());
    CHECK(r.exit_code == 1);
}

TEST_CASE("non-homogeneous input exits 1 with the offending term") {
    auto path = write_temp("qfac_inhom.txt", "field p=11\nF: x0^4 + x1\n");
    RunResult r = run("analyze --input " + path.string());
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("not homogeneous") != std::string::npos);
}

TEST_CASE("analysis over QQ without points exits 2") {
    auto path = write_temp("qfac_rational.txt",
                           "field rationals\nF: x0^4 + x1^4 + x2^4 + x3^4 + x4^4\n");
    RunResult r = run("analyze --input " + path.string());
    CHECK(r.exit_code == 2);
}

TEST_CASE("supplied rational nodes drive the Theorem 1.1 path") {
    // F = (x1^2-x0^2)(x2^2-x0^2) - (x3^2-x0^2)(x4^2-x0^2) is singular exactly
    // where all four factors vanish: the 16 points (1:±1:±1:±1:±1); each is a
    // node.  Supplying 8 of them analyzes the s = 8 path over QQ.
    auto input = write_temp("qfac_nodes8.txt",
                            "field rationals\n"
                            "F: (x1^2 - x0^2)*(x2^2 - x0^2) - (x3^2 - x0^2)*(x4^2 - x0^2)\n");
    std::string pts;
    for (int a = -1; a <= 1; a += 2)
        for (int b = -1; b <= 1; b += 2)
            for (int c = -1; c <= 1; c += 2)
                pts += "1," + std::to_string(a) + "," + std::to_string(b) + "," +
                       std::to_string(c) + ",1\n";
    auto points = write_temp("qfac_nodes8_pts.txt", pts);
    RunResult r = run("analyze --input " + input.string() + " --points " + points.string());
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.output);
    CHECK(j["s"] == 8);
    CHECK(j["all_singular_are_nodes"] == true);
    CHECK(j["verdict"]["theorem_path"] == "QFactorial");
    CHECK(j["verdict"]["citation"] == "Thm1.1-s<=8");
    CHECK(j["verdict"]["defect"] == 0);
    CHECK(j["verdict"]["consistent"] == true);

    // verdict subcommand prints just the verdict block
    RunResult rv = run("verdict --input " + input.string() + " --points " + points.string());
    REQUIRE(rv.exit_code == 0);
    json jv = json::parse(rv.output);
    CHECK(jv["citation"] == "Thm1.1-s<=8");
    CHECK(jv["defect"] == 0);
}

TEST_CASE("generate rejects p = 2 and bad inputs") {
    RunResult r = run("generate --seed 1 --p 2 --out /tmp/qfac_gen_p2");
    CHECK(r.exit_code == 1);
    RunResult r2 = run("analyze --input /nonexistent/qfac.txt");
    CHECK(r2.exit_code == 1);
}

TEST_CASE("an exhausted enumeration budget exits 2") {
    auto path = write_temp("qfac_budget.txt",
                           "field p=11\nF: x0^4 + x1^4 + x2^4 + x3^4 + x4^4 + x0*x1*x2*x3\n");
    RunResult r = run("analyze --input " + path.string() + " --field p=11,k=2 --budget 1000");
    CHECK(r.exit_code == 2);
}
