#pragma once

#include <string>
#include <vector>

#include "spindot/config.hpp"

namespace spindot {

// Tabular record of a run: one row per sweep value, a fixed observable
// column set, and a provenance block (resolved config + version + seed) that
// suffices to reproduce the output bit-identically.
struct SweepResult {
    std::string sweep_variable;
    std::string sweep_unit;
    std::vector<std::string> columns;
    std::vector<double> values;              // sorted ascending
    std::vector<std::vector<double>> rows;   // rows[i].size() == columns.size()
    Json provenance = Json::object();

    void validate() const;
};

// One header row, '.' decimal separator, 17-significant-digit floats.
std::string to_csv(const SweepResult& r);

// Structured document mirroring SweepResult, provenance included.
Json to_json(const SweepResult& r);

std::string format_double(double x);  // %.17g

}  // namespace spindot
