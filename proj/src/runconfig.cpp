#include "waveqed/runconfig.hpp"

#include <algorithm>
#include <sstream>

namespace waveqed {

std::string to_string(Command cmd) {
    switch (cmd) {
        case Command::Modes: return "modes";
        case Command::Spectrum: return "spectrum";
        case Command::PhaseMap: return "phase-map";
        case Command::Dressed: return "dressed";
        case Command::Validate: return "validate";
    }
    return "?";
}

std::string to_string(OutputFormat fmt) {
    return fmt == OutputFormat::Csv ? "csv" : "json";
}

Command command_from_string(const std::string& s) {
    if (s == "modes") return Command::Modes;
    if (s == "spectrum") return Command::Spectrum;
    if (s == "phase-map") return Command::PhaseMap;
    if (s == "dressed") return Command::Dressed;
    if (s == "validate") return Command::Validate;
    throw ConfigError("unknown command: " + s);
}

OutputFormat format_from_string(const std::string& s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw ConfigError("unknown output format: " + s);
}

nlohmann::ordered_json RunConfig::to_json() const {
    nlohmann::ordered_json j;
    j["command"] = to_string(command);
    j["geometry"] = {{"a", a}, {"z0", z0}};
    nlohmann::ordered_json physics;
    if (omega_e_at_midpoint)
        physics["omega_e"] = "mid";
    else
        physics["omega_e"] = omega_e;
    physics["rabi"] = rabi;
    physics["detuning"] = detuning;
    physics["g"] = g;
    j["physics"] = physics;
    j["band"] = band;
    j["input"] = input;
    nlohmann::ordered_json grid;
    grid["omega_points"] = omega_points;
    if (has_omega_range) {
        grid["omega_min"] = omega_min;
        grid["omega_max"] = omega_max;
    }
    grid["rabi_min"] = rabi_min;
    grid["rabi_max"] = rabi_max;
    grid["rabi_points"] = rabi_points;
    grid["detuning_min"] = detuning_min;
    grid["detuning_max"] = detuning_max;
    grid["detuning_points"] = detuning_points;
    j["grid"] = grid;
    j["modes_omega_max"] = modes_omega_max;
    j["truncation_multiplier"] = truncation_multiplier;
    j["quad_abs_tol"] = quad_abs_tol;
    j["threads"] = threads;
    j["seed"] = seed;
    j["pv_rel_tol"] = pv_rel_tol;
    j["flip_gamma_sign"] = flip_gamma_sign;
    j["out"] = out;
    j["format"] = to_string(format);
    j["preset"] = preset;
    return j;
}

RunConfig RunConfig::from_json(const nlohmann::ordered_json& j) {
    RunConfig cfg;
    try {
        if (j.contains("command")) cfg.command = command_from_string(j.at("command"));
        if (j.contains("geometry")) {
            const auto& geo = j.at("geometry");
            if (geo.contains("a")) cfg.a = geo.at("a");
            if (geo.contains("z0")) cfg.z0 = geo.at("z0");
        }
        if (j.contains("physics")) {
            const auto& ph = j.at("physics");
            if (ph.contains("omega_e")) {
                if (ph.at("omega_e").is_string()) {
                    if (ph.at("omega_e") != "mid")
                        throw ConfigError("physics.omega_e must be a number or \"mid\"");
                    cfg.omega_e_at_midpoint = true;
                } else {
                    cfg.omega_e_at_midpoint = false;
                    cfg.omega_e = ph.at("omega_e");
                }
            }
            if (ph.contains("rabi")) cfg.rabi = ph.at("rabi");
            if (ph.contains("detuning")) cfg.detuning = ph.at("detuning");
            if (ph.contains("g")) cfg.g = ph.at("g");
        }
        if (j.contains("band")) cfg.band = j.at("band");
        if (j.contains("input")) cfg.input = j.at("input");
        if (j.contains("grid")) {
            const auto& grid = j.at("grid");
            if (grid.contains("omega_points")) cfg.omega_points = grid.at("omega_points");
            if (grid.contains("omega_min") && grid.contains("omega_max")) {
                cfg.has_omega_range = true;
                cfg.omega_min = grid.at("omega_min");
                cfg.omega_max = grid.at("omega_max");
            }
            if (grid.contains("rabi_min")) cfg.rabi_min = grid.at("rabi_min");
            if (grid.contains("rabi_max")) cfg.rabi_max = grid.at("rabi_max");
            if (grid.contains("rabi_points")) cfg.rabi_points = grid.at("rabi_points");
            if (grid.contains("detuning_min")) cfg.detuning_min = grid.at("detuning_min");
            if (grid.contains("detuning_max")) cfg.detuning_max = grid.at("detuning_max");
            if (grid.contains("detuning_points"))
                cfg.detuning_points = grid.at("detuning_points");
        }
        if (j.contains("modes_omega_max")) cfg.modes_omega_max = j.at("modes_omega_max");
        if (j.contains("truncation_multiplier"))
            cfg.truncation_multiplier = j.at("truncation_multiplier");
        if (j.contains("quad_abs_tol")) cfg.quad_abs_tol = j.at("quad_abs_tol");
        if (j.contains("threads")) cfg.threads = j.at("threads");
        if (j.contains("seed")) cfg.seed = j.at("seed");
        if (j.contains("pv_rel_tol")) cfg.pv_rel_tol = j.at("pv_rel_tol");
        if (j.contains("flip_gamma_sign")) cfg.flip_gamma_sign = j.at("flip_gamma_sign");
        if (j.contains("out")) cfg.out = j.at("out");
        if (j.contains("format")) cfg.format = format_from_string(j.at("format"));
        if (j.contains("preset")) cfg.preset = j.at("preset");
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    return cfg;
}

void RunConfig::validate() const {
    if (!(a > 0.0)) throw ConfigError("geometry.a must be > 0");
    if (rabi < 0.0) throw ConfigError("rabi must be >= 0");
    if (!(g > 0.0)) throw ConfigError("g must be > 0");
    if (band < 1) throw ConfigError("band index must be >= 1");
    if (omega_points < 1) throw ConfigError("omega_points must be >= 1");
    if (rabi_points < 1 || detuning_points < 1)
        throw ConfigError("phase-map grid needs at least one point per axis");
    if (!(truncation_multiplier > 0.0))
        throw ConfigError("truncation_multiplier must be > 0");
    if (!(quad_abs_tol > 0.0)) throw ConfigError("quad_abs_tol must be > 0");
    if (threads < 1) throw ConfigError("threads must be >= 1");
    parse_input_spec(input);
}

SystemParams RunConfig::system_params() const {
    SystemParams params;
    params.geom.a = a;
    params.geom.z0 = z0;
    params.rabi = rabi;
    params.detuning = detuning;
    params.g = g;
    params.truncation.max_cutoff_multiplier = truncation_multiplier;
    params.truncation.quad.abs_tol = quad_abs_tol;
    const Band b = band_by_index(params.geom, band);
    params.omega_e = omega_e_at_midpoint ? 0.5 * (b.lo + b.hi) : omega_e;
    return params;
}

Band RunConfig::resolved_band() const {
    WaveguideGeometry geom;
    geom.a = a;
    geom.z0 = z0;
    return band_by_index(geom, band);
}

InputSpec parse_input_spec(const std::string& text) {
    InputSpec spec;
    if (text == "scss") {
        spec.kind = InputKind::Scss;
        return spec;
    }
    if (text == "dark") {
        spec.kind = InputKind::Dark;
        return spec;
    }
    if (text == "equal") {
        spec.kind = InputKind::Equal;
        return spec;
    }
    if (text.rfind("sms:", 0) == 0) {
        spec.kind = InputKind::SingleMode;
        try {
            spec.sms_channel = std::stoi(text.substr(4));
        } catch (const std::exception&) {
            throw ConfigError("malformed single-mode input selector: " + text);
        }
        if (spec.sms_channel < 1)
            throw ConfigError("single-mode channel must be >= 1");
        return spec;
    }
    if (text.rfind("custom:", 0) == 0) {
        spec.kind = InputKind::Custom;
        std::stringstream body(text.substr(7));
        std::string pair;
        while (std::getline(body, pair, ';')) {
            const auto comma = pair.find(',');
            try {
                const double re = std::stod(pair.substr(0, comma));
                const double im =
                    comma == std::string::npos ? 0.0 : std::stod(pair.substr(comma + 1));
                spec.custom.emplace_back(re, im);
            } catch (const std::exception&) {
                throw ConfigError("malformed custom input coefficient: " + pair);
            }
        }
        if (spec.custom.empty())
            throw ConfigError("custom input selector has no coefficients");
        double nrm = 0.0;
        for (const auto& c : spec.custom) nrm += std::norm(c);
        if (nrm == 0.0) throw ConfigError("custom input vector must be nonzero");
        return spec;
    }
    throw ConfigError("unknown input selector: " + text +
                      " (expected scss | sms:<n> | dark | equal | custom:...)");
}

namespace {

std::string float_suffix(double v) {
    std::string s = std::to_string(v);
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.') s.pop_back();
    for (auto& ch : s)
        if (ch == '.') ch = 'p';
    return s;
}

RunConfig preset_base() {
    RunConfig cfg;
    cfg.a = 1.5;
    cfg.z0 = 0.0;
    cfg.g = 0.1;
    cfg.omega_e_at_midpoint = true;
    return cfg;
}

} // namespace

std::vector<std::string> preset_names() {
    return {"fig2a", "fig2c", "fig2d", "fig3a", "fig3b", "fig4"};
}

std::vector<PresetRun> expand_preset(const std::string& name) {
    std::vector<PresetRun> runs;

    if (name == "fig2a") {
        RunConfig cfg = preset_base();
        cfg.command = Command::PhaseMap;
        cfg.band = 1;
        cfg.rabi_min = 0.0;
        cfg.rabi_max = 2.0;
        cfg.rabi_points = 50;
        cfg.detuning_min = -2.0;
        cfg.detuning_max = 2.0;
        cfg.detuning_points = 50;
        cfg.preset = name;
        runs.push_back({cfg, ""});
        return runs;
    }
    if (name == "fig2c") {
        // single-mode spectra at fixed drive strength, varying detuning and
        // coupling: (detuning, g) in {(2, 0.1), (0, 0.1), (0, 0.2)}
        const double detunings[3] = {2.0, 0.0, 0.0};
        const double couplings[3] = {0.1, 0.1, 0.2};
        for (int i = 0; i < 3; ++i) {
            RunConfig cfg = preset_base();
            cfg.command = Command::Spectrum;
            cfg.band = 1;
            cfg.input = "sms:1";
            cfg.rabi = 1.0;
            cfg.detuning = detunings[i];
            cfg.g = couplings[i];
            cfg.preset = name;
            runs.push_back({cfg, "_detuning" + float_suffix(detunings[i]) + "_g" +
                                     float_suffix(couplings[i])});
        }
        return runs;
    }
    if (name == "fig2d") {
        for (double rabi : {0.0, 1.0, 1.5, 2.0}) {
            RunConfig cfg = preset_base();
            cfg.command = Command::Spectrum;
            cfg.band = 1;
            cfg.input = "sms:1";
            cfg.rabi = rabi;
            cfg.detuning = 0.5;
            cfg.preset = name;
            runs.push_back({cfg, "_rabi" + float_suffix(rabi)});
        }
        return runs;
    }
    if (name == "fig3a" || name == "fig3b" || name == "fig4") {
        const bool three_mode = name == "fig3b";
        std::vector<std::string> inputs;
        if (name == "fig4")
            inputs = {"scss", "sms:1", "sms:2"};
        else if (three_mode)
            inputs = {"scss", "sms:1", "sms:2", "sms:3", "equal", "dark"};
        else
            inputs = {"scss", "sms:1", "sms:2", "equal", "dark"};
        for (const std::string& input : inputs) {
            RunConfig cfg = preset_base();
            cfg.command = Command::Spectrum;
            cfg.band = three_mode ? 3 : 2;
            cfg.input = input;
            cfg.rabi = 0.5;
            cfg.detuning = 0.0;
            cfg.g = three_mode ? 0.05 : 0.1;
            cfg.preset = name;
            std::string suffix = "_" + input;
            suffix.erase(std::remove(suffix.begin(), suffix.end(), ':'), suffix.end());
            runs.push_back({cfg, suffix});
        }
        return runs;
    }
    throw ConfigError("unknown preset: " + name);
}

} // namespace waveqed
