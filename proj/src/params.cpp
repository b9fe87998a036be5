#include "spindot/params.hpp"

#include <cmath>

namespace spindot {

namespace {
const char* axis_name(int i) { return i == 0 ? "x" : (i == 1 ? "y" : "z"); }
}

void DotParameters::validate() const {
    for (int i = 0; i < 3; ++i) {
        if (!(w[i] > 0.0)) {
            throw ConfigError(std::string("dot.w_") + axis_name(i) + " must be > 0");
        }
        if (!(wp[i] > 0.0)) {
            throw ConfigError(std::string("dot.wp_") + axis_name(i) + " must be > 0");
        }
        if (wp[i] < w[i]) {
            throw ConfigError(std::string("Wp_") + axis_name(i) + " >= W_" + axis_name(i) +
                              " violated");
        }
    }
    if (!(m_star > 0.0)) throw ConfigError("dot.m_star must be > 0");
    if (!(capacitance > 0.0)) throw ConfigError("dot.capacitance must be > 0");
    if (temperature < 0.0) throw ConfigError("dot.temperature must be >= 0");
}

void FieldConfig::validate() const {
    if (b_ac < 0.0) throw ConfigError("fields.b_ac must be >= 0");
    if (omega < 0.0) throw ConfigError("fields.omega must be >= 0");
    if (!(d_eff > 0.0)) throw ConfigError("fields.d_eff must be > 0");
    if (e_y != 0.0 && gate_voltage != 0.0 && !rashba_source.has_value()) {
        throw ConfigError(
            "fields: both e_y and gate_voltage are set; fields.rashba_source "
            "must name the authoritative one (\"field\" or \"voltage\")");
    }
}

double FieldConfig::rashba_field() const {
    RashbaSource src;
    if (rashba_source.has_value()) {
        src = *rashba_source;
    } else if (gate_voltage != 0.0 && e_y == 0.0) {
        src = RashbaSource::voltage;
    } else {
        src = RashbaSource::field;
    }
    if (src == RashbaSource::voltage) {
        if (!(d_eff > 0.0)) throw DomainError("rashba_field: d_eff must be > 0");
        return gate_voltage / d_eff;
    }
    return e_y;
}

const MaterialPreset& preset_inas() {
    static const MaterialPreset p{"inas", 0.023, -14.9};
    return p;
}

const MaterialPreset& preset_free_electron() {
    static const MaterialPreset p{"free_electron", 1.0, 2.0};
    return p;
}

const MaterialPreset* find_preset(const std::string& name) {
    if (name == preset_inas().name) return &preset_inas();
    if (name == preset_free_electron().name) return &preset_free_electron();
    return nullptr;
}

}  // namespace spindot
