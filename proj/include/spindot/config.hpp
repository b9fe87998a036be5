#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "spindot/dot_model.hpp"
#include "spindot/params.hpp"

namespace spindot {

using Json = nlohmann::ordered_json;

// Per-run options beyond the physical records; command-specific blocks are
// parsed by the command runners (see run.hpp).
struct RunOptions {
    SplittingMode mode = SplittingMode::closed_form();
    bool mode_both = false;  // splitting command: emit closed form and quadrature
    std::uint64_t seed = 0;
    int steps_per_cycle = 200;  // integrator steps per drive period
    Json command_blocks;        // raw run.* subsections for the commands
    std::string preset_used;    // provenance: preset name or "none"
};

struct LoadedConfig {
    DotParameters dot;
    FieldConfig fields;
    RunOptions run;
    Json resolved;  // full config with defaults filled, as re-loadable JSON
};

// Parses and validates a config document with sections `dot`, `fields`,
// `run`. Boundary units: lengths in nm, fields in T, e_y in kV/cm; energies
// in eV; everything is converted to SI internally. A `preset` key inside
// `dot` applies a material preset which individual keys override. A document
// that is itself a run output is accepted: its provenance.config block is
// loaded instead.
LoadedConfig load_config(const std::string& text);
LoadedConfig load_config_json(const Json& doc);
LoadedConfig load_config_file(const std::string& path);

// Emits a document that load_config reproduces bit-exactly (numeric fields
// compare equal as doubles).
Json emit_config(const DotParameters& dot, const FieldConfig& fields, const RunOptions& run);

// Boundary conversion helpers. to_boundary picks the emitted value y such
// that y * scale reads back as exactly x (nudging the last bits when plain
// division does not round-trip).
double to_boundary_units(double x_si, double scale_si_per_unit);
double from_boundary_units(double x_unit, double scale_si_per_unit);

inline constexpr double kNm = 1e-9;       // m per nm
inline constexpr double kKvPerCm = 1e5;   // (V/m) per (kV/cm)

}  // namespace spindot
