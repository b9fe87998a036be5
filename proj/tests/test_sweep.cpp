#include <doctest.h>

#include <sstream>

#include "spindot/run.hpp"

using namespace spindot;

namespace {

// Minimal CSV reader for the cross-parse check.
std::vector<std::vector<double>> parse_csv_numbers(const std::string& csv) {
    std::vector<std::vector<double>> out;
    std::istringstream in(csv);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (header) {
            header = false;
            continue;
        }
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace

TEST_CASE("sweep result validation") {
    SweepResult r;
    r.sweep_variable = "x";
    r.sweep_unit = "1";
    r.columns = {"a"};
    r.values = {0.0, 1.0};
    r.rows = {{1.0}, {2.0, 3.0}};
    CHECK_THROWS_AS(to_csv(r), DomainError);
    r.rows = {{1.0}, {2.0}};
    r.values = {1.0, 0.0};
    CHECK_THROWS_AS(to_csv(r), DomainError);
}

TEST_CASE("csv and json emitters carry identical numeric content") {
    const LoadedConfig cfg = load_config(R"({
        "fields": {"e_y": 0, "b_x": 1},
        "run": {"mode": "both", "splitting": {"variable": "e_y", "from": 0, "to": 80, "points": 7}}
    })");
    const CommandOutput out = run_command("splitting", cfg);

    const auto csv_rows = parse_csv_numbers(out.csv);
    REQUIRE(csv_rows.size() == out.document.at("rows").size());
    for (size_t i = 0; i < csv_rows.size(); ++i) {
        const Json& jr = out.document.at("rows").at(i);
        CHECK(csv_rows[i][0] == jr.at("value").get<double>());
        for (size_t c = 0; c < out.table.columns.size(); ++c) {
            const double jv = jr.at("observables").at(out.table.columns[c]).get<double>();
            CHECK(csv_rows[i][c + 1] == jv);  // exact: %.17g round-trips
        }
    }
}

TEST_CASE("splitting sweep") {
    SUBCASE("single point at zero field reduces to Zeeman") {
        const LoadedConfig cfg = load_config(R"({
            "dot": {"preset": "free_electron"},
            "fields": {"b_x": 1.0, "e_y": 0},
            "run": {"splitting": {"variable": "e_y", "from": 0, "to": 0, "points": 1}}
        })");
        const CommandOutput out = run_command("splitting", cfg);
        REQUIRE(out.table.rows.size() == 1);
        const double zeeman = out.table.rows[0][0];
        const double total = out.table.rows[0][2];
        CHECK(total == doctest::Approx(std::abs(zeeman)).epsilon(1e-12));
        CHECK(total == doctest::Approx(115.76763612e-6).epsilon(1e-9));
    }
    SUBCASE("101-point sweep is monotone in total") {
        const LoadedConfig cfg = load_config(R"({
            "run": {"mode": "effective_alpha", "alpha": 1e-19,
                     "splitting": {"variable": "gate_voltage", "from": 0, "to": 1, "points": 101}}
        })");
        const CommandOutput out = run_command("splitting", cfg);
        CHECK(out.table.rows.size() == 101);
        double prev = -1.0;
        for (const auto& row : out.table.rows) {
            CHECK(row[2] >= prev);
            prev = row[2];
        }
    }
    SUBCASE("both mode emits closed-form and quadrature columns") {
        const LoadedConfig cfg = load_config(R"({"run": {"mode": "both"}})");
        const CommandOutput out = run_command("splitting", cfg);
        REQUIRE(out.table.columns.size() == 5);
        CHECK(out.table.columns[1] == "rashba_offdiag_closed_form_ev");
        CHECK(out.table.columns[3] == "rashba_offdiag_quadrature_ev");
    }
}

TEST_CASE("feasibility report") {
    const LoadedConfig cfg = load_config(R"({
        "dot": {"preset": "free_electron", "temperature": 1.0, "capacitance": 1e-18},
        "fields": {"b_ac": 1e-3}
    })");
    const CommandOutput out = run_command("feasibility", cfg);
    REQUIRE(out.table.rows.size() == 1);
    const auto& row = out.table.rows[0];
    // ratio t_pi / (hbar/kT) at 1 K, hand-derived from the two frozen values
    CHECK(row[2] == doctest::Approx(4676.980852).epsilon(1e-6));
    CHECK(row[5] == 1.0);  // single occupancy holds
    CHECK(row[6] == 1.0);  // gate slower than the thermal scale: flagged
}

TEST_CASE("rabi command matches the oracle at the endpoints") {
    const LoadedConfig cfg = load_config(R"({
        "dot": {"preset": "free_electron"},
        "fields": {"b_x": 1.0, "b_ac": 2e-3},
        "run": {"rabi": {"points": 3}}
    })");
    const CommandOutput out = run_command("rabi", cfg);
    REQUIRE(out.table.rows.size() == 3);
    CHECK(out.table.rows[0][0] == doctest::Approx(0.0));       // P at t=0
    CHECK(out.table.rows[2][0] == doctest::Approx(1.0).epsilon(2e-3));  // pi pulse
    CHECK(out.table.rows[2][1] == doctest::Approx(1.0));       // RWA column
}

TEST_CASE("calibrate command recovers a planted resonance and embeds the log") {
    const char* base = R"({
        "dot": {"preset": "free_electron"},
        "fields": {"b_x": 0.1},
        "run": {"mode": "effective_alpha", "alpha": 1e-19}
    })";
    const LoadedConfig probe = load_config(base);
    const SplittingResponse resp =
        make_splitting_response(probe.dot, probe.fields, probe.run.mode);
    const double v_star = 0.3141592653589793;
    const double tol = 1e-6;
    Json doc = Json::parse(base);
    doc["run"]["calibrate"] = {{"v_max", 1.0},
                               {"tol", tol},
                               {"omega", resp.total_at_voltage(v_star) / constants::hbar}};
    const CommandOutput out = run_command("calibrate", load_config_json(doc));

    REQUIRE(out.document.contains("calibration"));
    const Json& c = out.document.at("calibration");
    CHECK(c.at("iterations").size() == out.table.rows.size());
    CHECK(std::abs(c.at("final_v").get<double>() - v_star) <= tol);
    // the sweep table carries the same final_v on every row
    for (const auto& row : out.table.rows) CHECK(row[3] == c.at("final_v").get<double>());
}

TEST_CASE("wire command reports transfer fidelity") {
    const LoadedConfig cfg = load_config(R"({
        "run": {"wire": {"n_sites": 4, "exchange_j_ev": 1e-5, "input": "down"}}
    })");
    const CommandOutput out = run_command("wire", cfg);
    REQUIRE(out.table.rows.size() == 3);
    CHECK(out.table.rows.back()[2] >= 0.999);  // fidelity_last_site
}

TEST_CASE("crot command") {
    const LoadedConfig cfg = load_config(R"({
        "dot": {"preset": "free_electron"},
        "fields": {"b_x": 1.0, "b_ac": 1e-2}
    })");
    const CommandOutput out = run_command("crot", cfg);
    REQUIRE(out.table.rows.size() == 1);
    CHECK(out.table.rows[0][0] >= 0.99);  // flip probability
    CHECK(out.table.rows[0][2] <= 0.05);  // leakage
}

TEST_CASE("outputs are deterministic and reproducible from provenance") {
    const char* text = R"({
        "run": {"mode": "both", "seed": 99,
                 "splitting": {"variable": "e_y", "from": 0, "to": 50, "points": 11}}
    })";
    const CommandOutput a = run_command("splitting", load_config(text));
    const CommandOutput b = run_command("splitting", load_config(text));
    CHECK(a.csv == b.csv);
    CHECK(a.document.dump() == b.document.dump());

    // re-run from the output's provenance block
    const LoadedConfig from_output = load_config(a.document.dump());
    const CommandOutput c = run_command("splitting", from_output);
    CHECK(c.csv == a.csv);
    CHECK(c.document.dump() == a.document.dump());
}

TEST_CASE("unknown subcommand") {
    CHECK_THROWS_AS(run_command("entangle", load_config("{}")), ConfigError);
}

TEST_CASE("unknown keys inside a command block are named") {
    CHECK_THROWS_WITH_AS(
        run_command("splitting", load_config(R"({"run": {"splitting": {"pionts": 3}}})")),
        doctest::Contains("pionts"), ConfigError);
}

TEST_CASE("feasibility at zero temperature is a domain error") {
    const LoadedConfig cfg = load_config(R"({"dot": {"temperature": 0}})");
    CHECK_THROWS_AS(run_command("feasibility", cfg), DomainError);
}
