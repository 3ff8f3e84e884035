#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "waveqed/analysis.hpp"

#include "json.hpp"

namespace waveqed {

enum class Command { Modes, Spectrum, PhaseMap, Dressed, Validate };
enum class OutputFormat { Csv, Json };

std::string to_string(Command cmd);
std::string to_string(OutputFormat fmt);
Command command_from_string(const std::string& s);
OutputFormat format_from_string(const std::string& s);

/// Fully resolved run description. Serializes losslessly to/from JSON; every
/// output file embeds the resolved form, including defaulted fields.
struct RunConfig {
    Command command = Command::Spectrum;

    // geometry
    double a = 1.5;
    double z0 = 0.0;

    // physics; omega_e_at_midpoint places the emitter at the band midpoint
    bool omega_e_at_midpoint = true;
    double omega_e = 0.0;
    double rabi = 0.0;
    double detuning = 0.0;
    double g = 0.1;

    // band and input state
    int band = 1;
    std::string input = "scss";  // scss | sms:<n> | dark | equal | custom:re,im;...

    // spectral grid; omega range defaults to the full band
    int omega_points = 400;
    bool has_omega_range = false;
    double omega_min = 0.0;
    double omega_max = 0.0;

    // phase-map grid
    double rabi_min = 0.0, rabi_max = 2.0;
    int rabi_points = 50;
    double detuning_min = -2.0, detuning_max = 2.0;
    int detuning_points = 50;

    // modes listing
    double modes_omega_max = 12.0;

    // numerics
    double truncation_multiplier = 1.0;
    double quad_abs_tol = 1e-9;
    int threads = 1;

    // validate
    std::uint64_t seed = 20250612;
    double pv_rel_tol = 1e-6;
    bool flip_gamma_sign = false;

    std::string out;
    OutputFormat format = OutputFormat::Csv;
    std::string preset;

    nlohmann::ordered_json to_json() const;
    static RunConfig from_json(const nlohmann::ordered_json& j);

    void validate() const;

    /// SystemParams + band derived from this config (resolves the band
    /// midpoint default for omega_e).
    SystemParams system_params() const;
    Band resolved_band() const;
};

/// Parse an input-state selector string.
InputSpec parse_input_spec(const std::string& text);

/// One concrete run expanded from a preset; `suffix` distinguishes the
/// output files of multi-run presets.
struct PresetRun {
    RunConfig config;
    std::string suffix;
};

/// Named parameter sets matching the bundled demonstration regimes
/// (fig2a, fig2c, fig2d, fig3a, fig3b, fig4). Throws ConfigError for
/// unknown names.
std::vector<PresetRun> expand_preset(const std::string& name);

std::vector<std::string> preset_names();

} // namespace waveqed
