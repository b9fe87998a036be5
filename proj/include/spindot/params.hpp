#pragma once

#include <array>
#include <optional>
#include <string>

#include "spindot/constants.hpp"
#include "spindot/errors.hpp"

namespace spindot {

// Which of the two spin states' effective well widths to use.
enum class Spin { up, down };

// Geometry and material parameters of a single box-confined dot.
// The down-spin widths wp_* are the effective extents of the more leaked
// wavefunction and must not be smaller than the up-spin widths.
struct DotParameters {
    std::array<double, 3> w{10e-9, 10e-9, 10e-9};    // up-spin widths, m (x,y,z)
    std::array<double, 3> wp{11e-9, 11e-9, 11e-9};   // down-spin widths, m
    double m_star = 0.023 * constants::free_electron_mass;  // kg
    double g_factor = -14.9;
    double capacitance = 1e-18;  // F
    double temperature = 1.0;    // K

    void validate() const;
    const std::array<double, 3>& widths(Spin s) const { return s == Spin::up ? w : wp; }
};

// How the Rashba-inducing field is specified when both e_y and gate_voltage
// appear in a config.
enum class RashbaSource { field, voltage };

// Static field, Rashba field/voltage, and AC drive settings.
struct FieldConfig {
    double b_x = 1.0;            // static field, T
    double e_y = 0.0;            // Rashba-inducing field, V/m
    double gate_voltage = 0.0;   // V
    double d_eff = 20e-9;        // gate distance for V -> field conversion, m
    double b_ac = 1e-3;          // AC drive amplitude, T
    double omega = 0.0;          // AC angular frequency, rad/s (0 = on resonance)
    double phase = 0.0;          // rad
    std::optional<RashbaSource> rashba_source;

    void validate() const;
    // The authoritative Rashba field for this run.
    double rashba_field() const;
};

struct MaterialPreset {
    std::string name;
    double m_star_ratio;  // units of free electron mass
    double g_factor;
};

// Conventional literature values; the design gives no numbers for these, so
// they are configuration defaults, not ground truth (flagged in provenance).
const MaterialPreset& preset_inas();
const MaterialPreset& preset_free_electron();
const MaterialPreset* find_preset(const std::string& name);

}  // namespace spindot
