#pragma once

#include <string>

#include "spindot/sweep.hpp"

namespace spindot {

inline constexpr const char* kArtifactName = "spindot";
inline constexpr const char* kArtifactVersion = "0.1.0";

struct CommandOutput {
    SweepResult table;
    Json document;    // JSON form, provenance embedded
    std::string csv;  // CSV form of the same table
};

// Executes one subcommand (splitting, rabi, crot, calibrate, wire,
// feasibility) against a loaded config. Deterministic: identical configs
// produce byte-identical outputs.
CommandOutput run_command(const std::string& command, const LoadedConfig& cfg);

}  // namespace spindot
