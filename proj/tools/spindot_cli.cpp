// Command-line front end: config in, machine-readable tables out.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "spindot/run.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitCalibration = 4;

struct Options {
    std::string config_path;
    std::string output_path;
    std::string format = "csv";
    std::string mode;
    long long seed = -1;
    std::string command;
};

int run(const Options& opt) {
    spindot::Json doc = spindot::Json::object();
    if (!opt.config_path.empty()) {
        std::ifstream in(opt.config_path);
        if (!in) {
            std::cerr << "error: cannot open config " << opt.config_path << "\n";
            return kExitConfig;
        }
        std::stringstream ss;
        ss << in.rdbuf();
        try {
            doc = spindot::Json::parse(ss.str());
        } catch (const nlohmann::json::exception& e) {
            std::cerr << "error: config parse: " << e.what() << "\n";
            return kExitConfig;
        }
    }
    // Re-running from an output document: unwrap its provenance block before
    // applying command-line overrides.
    if (doc.contains("provenance") && doc.at("provenance").contains("config")) {
        doc = doc.at("provenance").at("config");
    }
    if (!opt.mode.empty()) doc["run"]["mode"] = opt.mode;
    if (opt.seed >= 0) doc["run"]["seed"] = static_cast<std::uint64_t>(opt.seed);

    const spindot::LoadedConfig cfg = spindot::load_config_json(doc);
    const spindot::CommandOutput out = spindot::run_command(opt.command, cfg);

    std::string payload;
    if (opt.format == "json") {
        payload = out.document.dump(2);
        payload += '\n';
    } else if (opt.format == "csv") {
        payload = out.csv;
    } else {
        std::cerr << "error: --format must be csv or json\n";
        return kExitConfig;
    }

    if (opt.output_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream f(opt.output_path, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot write " << opt.output_path << "\n";
            return kExitConfig;
        }
        f << payload;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spindot: spin-qubit quantum-dot gate simulator"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--config", opt.config_path, "Config file (JSON)");
    app.add_option("--output", opt.output_path, "Output file (default: stdout)");
    app.add_option("--format", opt.format, "Output format: csv|json")->capture_default_str();
    app.add_option("--mode", opt.mode,
                   "Splitting mode: paper_closed_form|quadrature|effective_alpha|both");
    app.add_option("--seed", opt.seed, "RNG seed (overrides config)");

    for (const char* name : {"splitting", "rabi", "crot", "calibrate", "wire", "feasibility"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->fallthrough();  // global flags may follow the subcommand
        sub->callback([&opt, name] { opt.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << app.help();
        app.exit(e);
        return kExitConfig;
    }

    try {
        return run(opt);
    } catch (const spindot::CalibrationError& e) {
        std::cerr << "calibration error: " << e.what() << "\n";
        return kExitCalibration;
    } catch (const spindot::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const spindot::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const spindot::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const spindot::DomainError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
