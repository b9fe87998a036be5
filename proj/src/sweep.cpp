#include "spindot/sweep.hpp"

#include <cstdio>

namespace spindot {

void SweepResult::validate() const {
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != columns.size()) {
            throw DomainError("SweepResult: row " + std::to_string(i) + " width mismatch");
        }
        if (i > 0 && values[i] < values[i - 1]) {
            throw DomainError("SweepResult: rows must be sorted by sweep value");
        }
    }
    if (values.size() != rows.size()) throw DomainError("SweepResult: values/rows size mismatch");
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string to_csv(const SweepResult& r) {
    r.validate();
    std::string out = csv_quote(r.sweep_variable + "[" + r.sweep_unit + "]");
    for (const auto& c : r.columns) {
        out += ',';
        out += csv_quote(c);
    }
    out += '\n';
    for (size_t i = 0; i < r.rows.size(); ++i) {
        out += format_double(r.values[i]);
        for (double v : r.rows[i]) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

Json to_json(const SweepResult& r) {
    r.validate();
    Json doc;
    doc["sweep_variable"] = r.sweep_variable;
    doc["sweep_unit"] = r.sweep_unit;
    doc["columns"] = r.columns;
    Json rows = Json::array();
    for (size_t i = 0; i < r.rows.size(); ++i) {
        Json row;
        row["value"] = r.values[i];
        Json obs = Json::object();
        for (size_t c = 0; c < r.columns.size(); ++c) {
            obs[r.columns[c]] = r.rows[i][c];
        }
        row["observables"] = obs;
        rows.push_back(row);
    }
    doc["rows"] = rows;
    doc["provenance"] = r.provenance;
    return doc;
}

}  // namespace spindot
