#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct CmdResult {
    int exit_code = -1;
    std::string stdout_text;
};

CmdResult run_cli(const std::string& args) {
    const std::string cmd = std::string(SPINDOT_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    CmdResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (size_t n = fread(buf.data(), 1, buf.size(), pipe)) {
        r.stdout_text.append(buf.data(), n);
        if (n < buf.size()) break;
    }
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = "/tmp/spindot_cli_test_" + name;
    std::ofstream f(path);
    f << content;
    return path;
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s) n += (c == '\n');
    return n;
}

}  // namespace

TEST_CASE("feasibility runs with defaults and prints csv") {
    const CmdResult r = run_cli("feasibility");
    CHECK(r.exit_code == 0);
    CHECK(count_lines(r.stdout_text) == 2);  // header + one row
    CHECK(r.stdout_text.find("t_pi_s") != std::string::npos);
}

TEST_CASE("json format embeds provenance") {
    const CmdResult r = run_cli("feasibility --format json");
    CHECK(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.stdout_text);
    CHECK(doc.at("provenance").at("config").contains("dot"));
    CHECK(doc.at("provenance").at("version").is_string());
}

TEST_CASE("splitting sweep to a file") {
    const std::string cfg = write_temp("split.json", R"({
        "run": {"splitting": {"variable": "e_y", "from": 0, "to": 10, "points": 5}}
    })");
    const std::string out = "/tmp/spindot_cli_test_out.csv";
    const CmdResult r = run_cli("splitting --config " + cfg + " --output " + out);
    CHECK(r.exit_code == 0);
    std::ifstream f(out);
    REQUIRE(f.good());
    std::string first;
    std::getline(f, first);
    CHECK(first.rfind("e_y[kV/cm]", 0) == 0);
    int rows = 0;
    for (std::string line; std::getline(f, line);) ++rows;
    CHECK(rows == 5);
}

TEST_CASE("identical invocations produce identical bytes") {
    const CmdResult a = run_cli("splitting --mode both --format json");
    const CmdResult b = run_cli("splitting --mode both --format json");
    CHECK(a.exit_code == 0);
    CHECK(a.stdout_text == b.stdout_text);
}

TEST_CASE("exit codes") {
    SUBCASE("unknown subcommand: usage and nonzero") {
        const CmdResult r = run_cli("entangle");
        CHECK(r.exit_code == 2);
    }
    SUBCASE("config error is 2") {
        const std::string bad = write_temp("bad.json", R"({"dot": {"wp_x": 5}})");
        const CmdResult r = run_cli("feasibility --config " + bad);
        CHECK(r.exit_code == 2);
        const std::string missing = "/tmp/definitely_not_here.json";
        CHECK(run_cli("feasibility --config " + missing).exit_code == 2);
    }
    SUBCASE("calibration failure is 4") {
        // omega far above anything the voltage range can reach
        const std::string cfg = write_temp("cal.json", R"({
            "run": {"mode": "effective_alpha", "alpha": 1e-22,
                     "calibrate": {"omega": 1e15, "v_max": 1.0}}
        })");
        const CmdResult r = run_cli("calibrate --config " + cfg);
        CHECK(r.exit_code == 4);
    }
    SUBCASE("capacity error is 3") {
        const std::string cfg = write_temp("wire11.json", R"({
            "run": {"wire": {"n_sites": 11}}
        })");
        const CmdResult r = run_cli("wire --config " + cfg);
        CHECK(r.exit_code == 3);
    }
}

TEST_CASE("rerun from an output document reproduces it bit-identically") {
    const std::string cfg = write_temp("prov.json", R"({
        "run": {"splitting": {"variable": "gate_voltage", "from": 0, "to": 1, "points": 7}}
    })");
    const std::string out1 = "/tmp/spindot_cli_test_prov_out.json";
    CHECK(run_cli("splitting --config " + cfg + " --format json --output " + out1).exit_code == 0);
    const CmdResult r2 = run_cli("splitting --config " + out1 + " --format json");
    std::ifstream f(out1);
    std::string original((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    CHECK(r2.stdout_text == original);
}
