#include "spindot/run.hpp"

#include <cmath>

#include "spindot/calibration.hpp"
#include "spindot/gates.hpp"
#include "spindot/readout.hpp"
#include "spindot/spinwire.hpp"

namespace spindot {

using constants::hbar;
using constants::pi;

namespace {

Json make_provenance(const std::string& command, const LoadedConfig& cfg) {
    Json p;
    p["artifact"] = kArtifactName;
    p["version"] = kArtifactVersion;
    p["command"] = command;
    p["seed"] = cfg.run.seed;
    if (cfg.run.preset_used != "none") {
        p["preset_note"] = "material preset values are conventional defaults, not fitted data";
    }
    p["config"] = cfg.resolved;
    return p;
}

const Json block_or_empty(const Json& blocks, const char* name,
                          std::initializer_list<const char*> allowed) {
    if (blocks.is_object() && blocks.contains(name)) {
        if (!blocks.at(name).is_object()) {
            throw ConfigError(std::string("config.run.") + name + " must be an object");
        }
        const Json& b = blocks.at(name);
        for (const auto& [key, value] : b.items()) {
            (void)value;
            bool known = false;
            for (const char* a : allowed) {
                if (key == a) {
                    known = true;
                    break;
                }
            }
            if (!known) {
                throw ConfigError(std::string("config.run.") + name + "." + key +
                                  ": unknown key");
            }
        }
        return b;
    }
    return Json::object();
}

double block_number(const Json& b, const char* key, double fallback) {
    if (!b.contains(key)) return fallback;
    if (!b.at(key).is_number()) {
        throw ConfigError(std::string("config.run block key ") + key + " must be a number");
    }
    return b.at(key).get<double>();
}

std::string block_text(const Json& b, const char* key, const std::string& fallback) {
    if (!b.contains(key)) return fallback;
    if (!b.at(key).is_string()) {
        throw ConfigError(std::string("config.run block key ") + key + " must be a string");
    }
    return b.at(key).get<std::string>();
}

SweepResult cmd_splitting(const LoadedConfig& cfg) {
    const Json b = block_or_empty(cfg.run.command_blocks, "splitting",
                                  {"variable", "from", "to", "points"});
    const std::string variable = block_text(b, "variable", "e_y");
    const double from = block_number(b, "from", 0.0);
    const double to = block_number(b, "to", variable == "e_y" ? 100.0 : 1.0);
    const int points = static_cast<int>(block_number(b, "points", 101.0));
    if (points < 1) throw ConfigError("config.run.splitting.points must be >= 1");
    if (to < from) throw ConfigError("config.run.splitting: to must be >= from");

    SweepResult r;
    r.sweep_variable = variable;
    if (variable == "e_y") {
        r.sweep_unit = "kV/cm";
    } else if (variable == "gate_voltage") {
        r.sweep_unit = "V";
    } else {
        throw ConfigError("config.run.splitting.variable must be e_y or gate_voltage");
    }

    std::vector<SplittingMode> modes;
    std::vector<std::string> suffix;
    if (cfg.run.mode_both) {
        modes = {SplittingMode::closed_form(), SplittingMode::quadrature()};
        suffix = {"_closed_form", "_quadrature"};
    } else {
        modes = {cfg.run.mode};
        suffix = {""};
    }
    r.columns = {"zeeman_ev"};
    for (const auto& s : suffix) {
        r.columns.push_back("rashba_offdiag" + s + "_ev");
        r.columns.push_back("total" + s + "_ev");
    }

    for (int i = 0; i < points; ++i) {
        const double x =
            points == 1 ? from
                        : from + (to - from) * static_cast<double>(i) / (points - 1.0);
        FieldConfig f = cfg.fields;
        if (variable == "e_y") {
            f.e_y = from_boundary_units(x, kKvPerCm);
            f.gate_voltage = 0.0;
            f.rashba_source = RashbaSource::field;
        } else {
            f.gate_voltage = x;
            f.e_y = 0.0;
            f.rashba_source = RashbaSource::voltage;
        }
        std::vector<double> row;
        bool first = true;
        for (const auto& m : modes) {
            const SplittingBreakdown s = total_splitting(cfg.dot, f, m);
            if (first) row.push_back(joules_to_ev(s.zeeman));
            first = false;
            row.push_back(joules_to_ev(s.rashba_offdiag));
            row.push_back(joules_to_ev(s.total));
        }
        r.values.push_back(x);
        r.rows.push_back(std::move(row));
    }
    return r;
}

SweepResult cmd_rabi(const LoadedConfig& cfg) {
    const Json b = block_or_empty(cfg.run.command_blocks, "rabi",
                                  {"t_from", "t_to", "points"});
    const double delta = total_splitting(cfg.dot, cfg.fields, cfg.run.mode).total;
    const double amp = drive_amplitude_energy(cfg.dot.g_factor, cfg.fields.b_ac);
    if (!(amp > 0.0)) throw ConfigError("rabi: fields.b_ac must be > 0");
    const double omega = cfg.fields.omega > 0.0 ? cfg.fields.omega : delta / hbar;
    const double t_pi = pi_time(amp);
    const double from = block_number(b, "t_from", 0.0);
    const double to = block_number(b, "t_to", t_pi);
    const int points = static_cast<int>(block_number(b, "points", 41.0));
    if (points < 1) throw ConfigError("config.run.rabi.points must be >= 1");
    if (to < from || from < 0.0) throw ConfigError("config.run.rabi: bad time range");

    DriveTerm d{amp, omega, cfg.fields.phase, 0, DriveAxis::x};
    const HermitianMatrix h = build_single(delta);
    const double dt_max = 2.0 * pi / std::max(omega, delta / hbar) / cfg.run.steps_per_cycle;

    SweepResult r;
    r.sweep_variable = "time";
    r.sweep_unit = "s";
    r.columns = {"p_down_evolve", "p_down_rwa"};
    for (int i = 0; i < points; ++i) {
        const double t =
            points == 1 ? from
                        : from + (to - from) * static_cast<double>(i) / (points - 1.0);
        const SpinState out = evolve(SpinState::up(), h, d, t, dt_max);
        r.values.push_back(t);
        r.rows.push_back({out.probability(1), rwa_flip_probability(delta, d, t)});
    }
    return r;
}

SweepResult cmd_crot(const LoadedConfig& cfg) {
    const Json b = block_or_empty(cfg.run.command_blocks, "crot",
                                  {"exchange", "exchange_j_ev", "angle", "control_state",
                                   "delta_c_ev", "delta_t_ev"});
    const double delta_t_default =
        joules_to_ev(total_splitting(cfg.dot, cfg.fields, cfg.run.mode).total);
    const double delta_t = ev_to_joules(block_number(b, "delta_t_ev", delta_t_default));
    const double delta_c = ev_to_joules(block_number(b, "delta_c_ev", 2.0 * delta_t_default));
    const double j = ev_to_joules(block_number(b, "exchange_j_ev", delta_t_default / 100.0));
    const double angle = block_number(b, "angle", pi);
    const std::string kind = block_text(b, "exchange", "ising");
    const std::string ctrl = block_text(b, "control_state", "up");
    ExchangeModel ex{kind == "heisenberg" ? ExchangeKind::heisenberg : ExchangeKind::ising, j};
    if (kind != "heisenberg" && kind != "ising") {
        throw ConfigError("config.run.crot.exchange must be ising or heisenberg");
    }
    const ControlState control = ctrl == "down" ? ControlState::down : ControlState::up;

    DriveTerm d{drive_amplitude_energy(cfg.dot.g_factor, cfg.fields.b_ac), 0.0,
                cfg.fields.phase, 1, DriveAxis::x};
    const int c = control == ControlState::up ? 0 : 1;
    const SpinState input = SpinState::basis_state(4, c << 1);
    const GateResult g = crot(input, angle, control, {delta_c, delta_t}, ex, d);

    SweepResult r;
    r.sweep_variable = "angle";
    r.sweep_unit = "rad";
    r.columns = {"flip_probability", "fidelity", "conditional_leakage", "duration_s",
                 "drive_omega_rad_per_s", "exchange_j_ev"};
    const double flip = g.final_state.probability(1) + g.final_state.probability(3);
    r.values.push_back(angle);
    r.rows.push_back({flip, g.fidelity, g.conditional_leakage,
                      g.schedule_used.segments.at(0).duration,
                      g.schedule_used.segments.at(0).drive->omega, joules_to_ev(j)});
    return r;
}

SweepResult cmd_calibrate(const LoadedConfig& cfg, Json* calibration_doc) {
    const Json b = block_or_empty(cfg.run.command_blocks, "calibrate",
                                  {"omega", "v_max", "tol", "flip_test"});
    const double v_max = block_number(b, "v_max", 1.0);
    const double tol = block_number(b, "tol", 1e-6 * v_max);
    const std::string ft = block_text(b, "flip_test", "crossing");
    if (ft != "crossing" && ft != "dynamics") {
        throw ConfigError("config.run.calibrate.flip_test must be crossing or dynamics");
    }
    const SplittingResponse resp = make_splitting_response(cfg.dot, cfg.fields, cfg.run.mode);
    const double omega_default = resp.total_at_voltage(v_max / 2.0) / hbar;
    const double omega = block_number(b, "omega", omega_default);

    const CalibrationLog log = find_resonance_voltage(
        cfg.dot, cfg.fields, cfg.run.mode, omega, v_max, tol,
        ft == "dynamics" ? FlipTest::dynamics : FlipTest::crossing);

    SweepResult r;
    r.sweep_variable = "iteration";
    r.sweep_unit = "1";
    r.columns = {"v_low", "v_high", "flipped", "final_v", "residual_ev"};
    Json iters = Json::array();
    for (size_t i = 0; i < log.iterations.size(); ++i) {
        const auto& it = log.iterations[i];
        r.values.push_back(static_cast<double>(i));
        r.rows.push_back({it.v_low, it.v_high, it.flipped ? 1.0 : 0.0, log.final_v,
                          joules_to_ev(log.residual)});
        Json ji;
        ji["v_low"] = it.v_low;
        ji["v_high"] = it.v_high;
        ji["flipped"] = it.flipped;
        iters.push_back(ji);
    }
    Json c;
    c["iterations"] = iters;
    c["expand_steps"] = log.expand_steps;
    c["final_v"] = log.final_v;
    c["residual_ev"] = joules_to_ev(log.residual);
    c["omega_rad_per_s"] = omega;
    c["flip_test"] = ft;
    *calibration_doc = c;
    return r;
}

SweepResult cmd_wire(const LoadedConfig& cfg) {
    const Json b = block_or_empty(cfg.run.command_blocks, "wire",
                                  {"n_sites", "exchange_j_ev", "input"});
    const int n = static_cast<int>(block_number(b, "n_sites", 5.0));
    const double j = ev_to_joules(block_number(b, "exchange_j_ev", 1e-6));
    const std::string input_name = block_text(b, "input", "plus");
    SpinState input = SpinState::up();
    if (input_name == "down") {
        input = SpinState::down();
    } else if (input_name == "plus") {
        Vector v(2);
        v << Complex(1.0 / std::sqrt(2.0), 0.0), Complex(1.0 / std::sqrt(2.0), 0.0);
        input = SpinState(std::move(v));
    } else if (input_name != "up") {
        throw ConfigError("config.run.wire.input must be up, down, or plus");
    }

    const TransferResult t = clocked_transfer(input, n, j);

    SweepResult r;
    r.sweep_variable = "pulse_index";
    r.sweep_unit = "1";
    r.columns = {"bond", "total_sz", "fidelity_last_site"};
    for (int s = 0; s < n; ++s) r.columns.push_back("p_down_site_" + std::to_string(s));
    for (size_t i = 0; i < t.trace.size(); ++i) {
        const auto& step = t.trace[i];
        r.values.push_back(static_cast<double>(i));
        std::vector<double> row{static_cast<double>(step.bond), step.total_sz, 0.0};
        for (double pd : step.site_down_probability) row.push_back(pd);
        r.rows.push_back(std::move(row));
    }
    if (!r.rows.empty()) {
        // fidelity column: overlap of the last site with the input after each
        // pulse is only scored at the end; fill the final row, zeros before.
        r.rows.back()[2] = t.fidelity;
    }
    return r;
}

SweepResult cmd_feasibility(const LoadedConfig& cfg) {
    const double t_pi = calibrate_pi_duration(cfg.dot, cfg.fields, false);
    const double tau = thermal_timescale(cfg.dot.temperature);
    const double ec = coulomb_blockade_energy(cfg.dot.capacitance);
    const double kt = constants::boltzmann * cfg.dot.temperature;

    SweepResult r;
    r.sweep_variable = "temperature";
    r.sweep_unit = "K";
    r.columns = {"t_pi_s",          "thermal_time_s",     "gate_to_thermal_ratio",
                 "coulomb_energy_ev", "kt_ev",            "single_occupancy_ok",
                 "exceeds_thermal_scale"};
    r.values.push_back(cfg.dot.temperature);
    const double ratio = t_pi / tau;
    r.rows.push_back({t_pi, tau, ratio, joules_to_ev(ec), joules_to_ev(kt),
                      ec > kt ? 1.0 : 0.0, ratio > 1.0 ? 1.0 : 0.0});
    return r;
}

}  // namespace

CommandOutput run_command(const std::string& command, const LoadedConfig& cfg) {
    CommandOutput out;
    Json calibration_doc;
    if (command == "splitting") {
        out.table = cmd_splitting(cfg);
    } else if (command == "rabi") {
        out.table = cmd_rabi(cfg);
    } else if (command == "crot") {
        out.table = cmd_crot(cfg);
    } else if (command == "calibrate") {
        out.table = cmd_calibrate(cfg, &calibration_doc);
    } else if (command == "wire") {
        out.table = cmd_wire(cfg);
    } else if (command == "feasibility") {
        out.table = cmd_feasibility(cfg);
    } else {
        throw ConfigError("unknown subcommand \"" + command + "\"");
    }
    out.table.provenance = make_provenance(command, cfg);
    out.document = to_json(out.table);
    if (command == "calibrate") out.document["calibration"] = calibration_doc;
    out.csv = to_csv(out.table);
    return out;
}

}  // namespace spindot
