#include "spindot/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace spindot {

double from_boundary_units(double x_unit, double scale_si_per_unit) {
    return x_unit * scale_si_per_unit;
}

double to_boundary_units(double x_si, double scale_si_per_unit) {
    // Nudge the quotient by ulps until multiplication reproduces x exactly.
    // A preimage always exists for values that entered through the boundary;
    // raw in-code doubles may land between representable products, in which
    // case the nearest quotient is emitted (off by at most half an ulp once).
    const double y0 = x_si / scale_si_per_unit;
    double up = y0, dn = y0;
    for (int k = 0; k <= 6; ++k) {
        if (up * scale_si_per_unit == x_si) return up;
        if (dn * scale_si_per_unit == x_si) return dn;
        up = std::nextafter(up, INFINITY);
        dn = std::nextafter(dn, -INFINITY);
    }
    return y0;
}

namespace {

class Section {
  public:
    Section(const Json& doc, std::string name, std::initializer_list<const char*> allowed)
        : name_(std::move(name)) {
        if (doc.contains(name_)) {
            if (!doc.at(name_).is_object()) {
                throw ConfigError("config." + name_ + " must be an object");
            }
            obj_ = doc.at(name_);
            for (const auto& [key, value] : obj_.items()) {
                (void)value;
                bool known = false;
                for (const char* a : allowed) {
                    if (key == a) {
                        known = true;
                        break;
                    }
                }
                if (!known) {
                    throw ConfigError("config." + name_ + "." + key + ": unknown key");
                }
            }
        }
    }

    bool has(const std::string& key) const { return obj_.contains(key); }

    double number(const std::string& key, double fallback) const {
        if (!has(key)) return fallback;
        const auto& v = obj_.at(key);
        if (!v.is_number()) throw ConfigError("config." + name_ + "." + key + " must be a number");
        return v.get<double>();
    }

    std::string text(const std::string& key, const std::string& fallback) const {
        if (!has(key)) return fallback;
        const auto& v = obj_.at(key);
        if (!v.is_string()) throw ConfigError("config." + name_ + "." + key + " must be a string");
        return v.get<std::string>();
    }

    const Json& raw() const { return obj_; }

  private:
    std::string name_;
    Json obj_ = Json::object();
};

}  // namespace

LoadedConfig load_config_json(const Json& doc_in) {
    const Json& doc =
        doc_in.contains("provenance") && doc_in.at("provenance").contains("config")
            ? doc_in.at("provenance").at("config")
            : doc_in;
    if (!doc.is_object()) throw ConfigError("config: top level must be an object");
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (key != "dot" && key != "fields" && key != "run") {
            throw ConfigError("config: unknown section \"" + key + "\"");
        }
    }

    LoadedConfig out;
    const Section dot(doc, "dot",
                      {"preset", "w_x", "w_y", "w_z", "wp_x", "wp_y", "wp_z", "m_star", "g_factor",
                       "capacitance", "temperature"});
    const Section fields(doc, "fields",
                         {"b_x", "e_y", "gate_voltage", "d_eff", "b_ac", "omega", "phase",
                          "rashba_source"});
    const Section run(doc, "run",
                      {"mode", "alpha", "seed", "steps_per_cycle", "splitting", "rabi", "crot",
                       "calibrate", "wire", "feasibility"});

    // Material preset first; explicit keys override.
    std::string preset_name = dot.text("preset", "");
    out.run.preset_used = preset_name.empty() ? "none" : preset_name;
    if (!preset_name.empty()) {
        const MaterialPreset* preset = find_preset(preset_name);
        if (!preset) throw ConfigError("config.dot.preset: unknown preset \"" + preset_name + "\"");
        out.dot.m_star = preset->m_star_ratio * constants::free_electron_mass;
        out.dot.g_factor = preset->g_factor;
    }

    const auto len = [&](const Section& s, const std::string& key, double fb_si) {
        return s.has(key) ? from_boundary_units(s.number(key, 0.0), kNm) : fb_si;
    };
    out.dot.w = {len(dot, "w_x", out.dot.w[0]), len(dot, "w_y", out.dot.w[1]),
                 len(dot, "w_z", out.dot.w[2])};
    out.dot.wp = {len(dot, "wp_x", out.dot.wp[0]), len(dot, "wp_y", out.dot.wp[1]),
                  len(dot, "wp_z", out.dot.wp[2])};
    if (dot.has("m_star")) {
        out.dot.m_star = dot.number("m_star", 0.0) * constants::free_electron_mass;
    }
    out.dot.g_factor = dot.number("g_factor", out.dot.g_factor);
    out.dot.capacitance = dot.number("capacitance", out.dot.capacitance);
    out.dot.temperature = dot.number("temperature", out.dot.temperature);
    out.dot.validate();

    out.fields.b_x = fields.number("b_x", out.fields.b_x);
    if (fields.has("e_y")) {
        out.fields.e_y = from_boundary_units(fields.number("e_y", 0.0), kKvPerCm);
    }
    out.fields.gate_voltage = fields.number("gate_voltage", out.fields.gate_voltage);
    out.fields.d_eff = len(fields, "d_eff", out.fields.d_eff);
    out.fields.b_ac = fields.number("b_ac", out.fields.b_ac);
    out.fields.omega = fields.number("omega", out.fields.omega);
    out.fields.phase = fields.number("phase", out.fields.phase);
    if (fields.has("rashba_source")) {
        const std::string src = fields.text("rashba_source", "");
        if (src == "field") {
            out.fields.rashba_source = RashbaSource::field;
        } else if (src == "voltage") {
            out.fields.rashba_source = RashbaSource::voltage;
        } else {
            throw ConfigError("config.fields.rashba_source must be \"field\" or \"voltage\"");
        }
    }
    out.fields.validate();

    const std::string mode = run.text("mode", "paper_closed_form");
    if (mode == "paper_closed_form") {
        out.run.mode = SplittingMode::closed_form();
    } else if (mode == "quadrature") {
        out.run.mode = SplittingMode::quadrature();
    } else if (mode == "effective_alpha") {
        if (!run.has("alpha")) {
            throw ConfigError("config.run.alpha is required in effective_alpha mode");
        }
        out.run.mode = SplittingMode::with_alpha(run.number("alpha", 0.0));
    } else if (mode == "both") {
        out.run.mode = SplittingMode::closed_form();
        out.run.mode_both = true;
    } else {
        throw ConfigError("config.run.mode: unknown mode \"" + mode + "\"");
    }
    if (run.has("seed")) {
        const Json& sv = run.raw().at("seed");
        if (sv.is_number_unsigned()) {
            out.run.seed = sv.get<std::uint64_t>();
        } else if (sv.is_number_integer() && sv.get<long long>() >= 0) {
            out.run.seed = static_cast<std::uint64_t>(sv.get<long long>());
        } else {
            throw ConfigError("config.run.seed must be a non-negative integer");
        }
    }
    out.run.steps_per_cycle = static_cast<int>(run.number("steps_per_cycle", 200.0));
    if (out.run.steps_per_cycle < 8) {
        throw ConfigError("config.run.steps_per_cycle must be >= 8");
    }
    out.run.command_blocks = run.raw();

    out.resolved = emit_config(out.dot, out.fields, out.run);
    return out;
}

LoadedConfig load_config(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: parse error: ") + e.what());
    }
    return load_config_json(doc);
}

LoadedConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_config(ss.str());
}

Json emit_config(const DotParameters& dot, const FieldConfig& fields, const RunOptions& run) {
    Json doc;
    Json d;
    if (run.preset_used != "none" && !run.preset_used.empty()) d["preset"] = run.preset_used;
    d["w_x"] = to_boundary_units(dot.w[0], kNm);
    d["w_y"] = to_boundary_units(dot.w[1], kNm);
    d["w_z"] = to_boundary_units(dot.w[2], kNm);
    d["wp_x"] = to_boundary_units(dot.wp[0], kNm);
    d["wp_y"] = to_boundary_units(dot.wp[1], kNm);
    d["wp_z"] = to_boundary_units(dot.wp[2], kNm);
    d["m_star"] = to_boundary_units(dot.m_star, constants::free_electron_mass);
    d["g_factor"] = dot.g_factor;
    d["capacitance"] = dot.capacitance;
    d["temperature"] = dot.temperature;
    doc["dot"] = d;

    Json f;
    f["b_x"] = fields.b_x;
    f["e_y"] = to_boundary_units(fields.e_y, kKvPerCm);
    f["gate_voltage"] = fields.gate_voltage;
    f["d_eff"] = to_boundary_units(fields.d_eff, kNm);
    f["b_ac"] = fields.b_ac;
    f["omega"] = fields.omega;
    f["phase"] = fields.phase;
    if (fields.rashba_source.has_value()) {
        f["rashba_source"] =
            *fields.rashba_source == RashbaSource::field ? "field" : "voltage";
    }
    doc["fields"] = f;

    Json r = run.command_blocks.is_object() ? run.command_blocks : Json::object();
    if (run.mode_both) {
        r["mode"] = "both";
    } else {
        switch (run.mode.variant) {
            case SplittingVariant::paper_closed_form: r["mode"] = "paper_closed_form"; break;
            case SplittingVariant::quadrature: r["mode"] = "quadrature"; break;
            case SplittingVariant::effective_alpha:
                r["mode"] = "effective_alpha";
                r["alpha"] = run.mode.alpha;
                break;
        }
    }
    r["seed"] = run.seed;
    r["steps_per_cycle"] = run.steps_per_cycle;
    doc["run"] = r;
    return doc;
}

}  // namespace spindot
