// waveqed - single-photon scattering spectra for a driven Lambda emitter in a
// multimode rectangular waveguide. Subcommands: modes, spectrum, phase-map,
// dressed, validate. All frequencies are in units of c/b.

#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "waveqed/output.hpp"
#include "waveqed/version.hpp"

namespace {

using namespace waveqed;

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitPhysicsError = 3;

struct CliState {
    RunConfig cfg;
    std::string config_path;
    std::string omega_e_text;
    std::string format_text;
    std::string preset_name;
    bool flag_set_a = false, flag_set_z0 = false, flag_set_g = false;
    bool flag_set_rabi = false, flag_set_detuning = false;
};

void add_common_flags(CLI::App* cmd, CliState& st) {
    cmd->add_option("--config", st.config_path, "JSON config file; flags override it");
    cmd->add_option("--a", st.cfg.a, "waveguide aspect ratio a/b");
    cmd->add_option("--z0", st.cfg.z0, "emitter longitudinal position (units of b)");
    cmd->add_option("--g", st.cfg.g, "emitter-waveguide coupling scale");
    cmd->add_option("--omega-e", st.omega_e_text,
                    "emitter frequency in c/b units, or 'mid' for the band midpoint");
    cmd->add_option("--rabi", st.cfg.rabi, "drive Rabi frequency");
    cmd->add_option("--detuning", st.cfg.detuning, "drive detuning");
    cmd->add_option("--band", st.cfg.band, "band index (number of propagating channels)");
    cmd->add_option("--truncation-multiplier", st.cfg.truncation_multiplier,
                    "Lamb-shift mode set: cutoffs below multiplier x band ceiling");
    cmd->add_option("--quad-tol", st.cfg.quad_abs_tol,
                    "absolute tolerance of the principal-value quadrature");
    cmd->add_option("--threads", st.cfg.threads, "sweep worker threads");
    cmd->add_option("--out", st.cfg.out, "output file path (or prefix for presets)");
    cmd->add_option("--format", st.format_text, "output format: csv | json");
}

// config file first, then explicit flags on top
void merge_config_file(CLI::App* cmd, CliState& st) {
    if (st.config_path.empty()) return;
    std::ifstream file(st.config_path);
    if (!file) throw ConfigError("cannot read config file: " + st.config_path);
    nlohmann::ordered_json j;
    try {
        file >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config file is not valid JSON: " + std::string(e.what()));
    }
    RunConfig from_file = RunConfig::from_json(j);

    auto keep = [cmd](const std::string& flag) {
        const CLI::Option* opt = cmd->get_option_no_throw(flag);
        return opt != nullptr && opt->count() > 0;
    };
    RunConfig merged = from_file;
    if (keep("--a")) merged.a = st.cfg.a;
    if (keep("--z0")) merged.z0 = st.cfg.z0;
    if (keep("--g")) merged.g = st.cfg.g;
    if (keep("--rabi")) merged.rabi = st.cfg.rabi;
    if (keep("--detuning")) merged.detuning = st.cfg.detuning;
    if (keep("--band")) merged.band = st.cfg.band;
    if (keep("--truncation-multiplier"))
        merged.truncation_multiplier = st.cfg.truncation_multiplier;
    if (keep("--quad-tol")) merged.quad_abs_tol = st.cfg.quad_abs_tol;
    if (keep("--threads")) merged.threads = st.cfg.threads;
    if (keep("--out")) merged.out = st.cfg.out;
    if (keep("--input")) merged.input = st.cfg.input;
    if (keep("--omega-min")) {
        merged.has_omega_range = true;
        merged.omega_min = st.cfg.omega_min;
    }
    if (keep("--omega-max")) {
        merged.has_omega_range = true;
        merged.omega_max = st.cfg.omega_max;
    }
    if (keep("--omega-points")) merged.omega_points = st.cfg.omega_points;
    if (keep("--rabi-min")) merged.rabi_min = st.cfg.rabi_min;
    if (keep("--rabi-max")) merged.rabi_max = st.cfg.rabi_max;
    if (keep("--rabi-points")) merged.rabi_points = st.cfg.rabi_points;
    if (keep("--detuning-min")) merged.detuning_min = st.cfg.detuning_min;
    if (keep("--detuning-max")) merged.detuning_max = st.cfg.detuning_max;
    if (keep("--detuning-points")) merged.detuning_points = st.cfg.detuning_points;
    if (keep("--max-cutoff")) merged.modes_omega_max = st.cfg.modes_omega_max;
    if (keep("--seed")) merged.seed = st.cfg.seed;
    if (keep("--pv-tol")) merged.pv_rel_tol = st.cfg.pv_rel_tol;
    if (keep("--flip-gamma-sign")) merged.flip_gamma_sign = st.cfg.flip_gamma_sign;
    st.cfg = merged;
}

void apply_text_options(CliState& st) {
    if (!st.omega_e_text.empty()) {
        if (st.omega_e_text == "mid") {
            st.cfg.omega_e_at_midpoint = true;
        } else {
            st.cfg.omega_e_at_midpoint = false;
            try {
                st.cfg.omega_e = std::stod(st.omega_e_text);
            } catch (const std::exception&) {
                throw ConfigError("--omega-e expects a number or 'mid'");
            }
        }
    }
    if (!st.format_text.empty()) st.cfg.format = format_from_string(st.format_text);
}

void emit(const RunConfig& cfg, const std::string& suffix, const std::string& csv,
          const nlohmann::ordered_json& json) {
    if (cfg.out.empty()) {
        if (cfg.format == OutputFormat::Csv)
            std::cout << csv;
        else
            std::cout << json.dump(2) << "\n";
        return;
    }
    std::string path = cfg.out;
    if (!suffix.empty()) {
        const std::string ext = cfg.format == OutputFormat::Csv ? ".csv" : ".json";
        const auto dot = path.rfind(ext);
        if (dot != std::string::npos && dot == path.size() - ext.size())
            path.insert(dot, suffix);
        else
            path += suffix + ext;
    }
    write_text_file(path, cfg.format == OutputFormat::Csv ? csv
                                                          : json.dump(2) + "\n");
    std::cerr << "wrote " << path << "\n";
}

int run_modes(RunConfig cfg) {
    cfg.command = Command::Modes;
    cfg.validate();
    WaveguideGeometry geom;
    geom.a = cfg.a;
    geom.z0 = cfg.z0;
    geom.validate();
    const std::vector<Mode> modes = enumerate_coupled_modes(geom, cfg.modes_omega_max);
    if (modes.empty())
        std::cerr << "warning: no coupled TM mode below omega = "
                  << format_double(cfg.modes_omega_max) << "\n";

    std::printf("%4s %4s %4s  %-20s\n", "j", "m", "n", "cutoff (c/b)");
    for (const Mode& mode : modes)
        std::printf("%4d %4d %4d  %-20.17g\n", mode.channel, mode.m, mode.n,
                    mode.cutoff);

    if (!cfg.out.empty())
        emit(cfg, "", modes_csv(cfg, modes), modes_json(cfg, modes));
    return kExitOk;
}

int run_spectrum_single(const RunConfig& cfg, const std::string& suffix) {
    cfg.validate();
    const SystemParams params = cfg.system_params();
    params.validate();
    const Band band = cfg.resolved_band();

    double lo = band.lo, hi = band.hi;
    if (cfg.has_omega_range) {
        lo = cfg.omega_min;
        hi = cfg.omega_max;
        if (!(band.lo <= lo && hi <= band.hi))
            throw std::domain_error("omega range extends outside band " +
                                    std::to_string(cfg.band));
    }
    const std::vector<double> grid =
        make_omega_grid(lo, hi, cfg.omega_points, params);
    const InputSpec input = parse_input_spec(cfg.input);
    // reject impossible selectors up front (e.g. sms channel beyond the band)
    build_input(input, grid[grid.size() / 2], params);

    const std::vector<SpectrumRow> rows = spectrum(grid, input, params, cfg.threads);
    emit(cfg, suffix, spectrum_csv(cfg, rows), spectrum_json(cfg, rows));
    return kExitOk;
}

int run_spectrum(RunConfig cfg, const std::string& preset) {
    cfg.command = Command::Spectrum;
    if (!preset.empty()) {
        int rc = kExitOk;
        for (const PresetRun& run : expand_preset(preset)) {
            RunConfig merged = run.config;
            if (merged.command != Command::Spectrum)
                throw ConfigError("preset " + preset + " is not a spectrum preset");
            merged.out = cfg.out.empty() ? preset : cfg.out;
            merged.format = cfg.format;
            merged.threads = cfg.threads;
            merged.omega_points = cfg.omega_points;
            rc = std::max(rc, run_spectrum_single(merged, run.suffix));
        }
        return rc;
    }
    return run_spectrum_single(cfg, "");
}

int run_phase_map(RunConfig cfg, const std::string& preset) {
    cfg.command = Command::PhaseMap;
    if (!preset.empty()) {
        const std::vector<PresetRun> runs = expand_preset(preset);
        if (runs.size() != 1 || runs[0].config.command != Command::PhaseMap)
            throw ConfigError("preset " + preset + " is not a phase-map preset");
        RunConfig merged = runs[0].config;
        merged.out = cfg.out;
        merged.format = cfg.format;
        merged.threads = cfg.threads;
        cfg = merged;
    }
    cfg.validate();
    const SystemParams params = cfg.system_params();
    params.validate();
    const Band band = cfg.resolved_band();

    auto axis = [](double lo, double hi, int n) {
        std::vector<double> v(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            v[static_cast<std::size_t>(i)] =
                n == 1 ? lo
                       : lo + (hi - lo) * static_cast<double>(i) /
                                 static_cast<double>(n - 1);
        return v;
    };
    const PhaseMapResult map =
        phase_map(band, axis(cfg.rabi_min, cfg.rabi_max, cfg.rabi_points),
                  axis(cfg.detuning_min, cfg.detuning_max, cfg.detuning_points),
                  params, cfg.threads);
    emit(cfg, "", phase_map_csv(cfg, map), phase_map_json(cfg, map));
    return kExitOk;
}

int run_dressed(RunConfig cfg) {
    cfg.command = Command::Dressed;
    cfg.validate();
    const SystemParams params = cfg.system_params();
    params.validate();
    const DressedStates d = dressed_states(params);

    std::printf("nu_plus        = %.17g\n", d.nu_plus);
    std::printf("nu_minus       = %.17g\n", d.nu_minus);
    std::printf("theta          = %.17g\n", d.theta);
    std::printf("nu_tilde_plus  = %.17g\n", d.nu_tilde_plus);
    std::printf("nu_tilde_minus = %.17g\n", d.nu_tilde_minus);
    std::printf("lamb_shift(omega_e) = %.17g\n", d.lamb_shift_at_omega_e);
    if (!cfg.out.empty()) {
        const nlohmann::ordered_json j = dressed_json(cfg, d);
        write_text_file(cfg.out, j.dump(2) + "\n");
        std::cerr << "wrote " << cfg.out << "\n";
    }
    return kExitOk;
}

int run_validate(RunConfig cfg) {
    cfg.command = Command::Validate;
    cfg.validate();

    validation::SuiteOptions opts;
    opts.seed = cfg.seed;
    opts.pv_rel_tol = cfg.pv_rel_tol;
    opts.quad_abs_tol = cfg.quad_abs_tol;
    opts.flip_gamma_sign = cfg.flip_gamma_sign;

    const std::vector<validation::CheckResult> results = validation::run_suite(opts);
    for (const auto& r : results)
        std::printf("[%s] %s: %s (worst %.3g, threshold %.3g)\n",
                    r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str(),
                    r.worst, r.threshold);

    if (!cfg.out.empty()) {
        write_text_file(cfg.out, validation_json(cfg, results).dump(2) + "\n");
        std::cerr << "wrote " << cfg.out << "\n";
    }
    return validation::all_passed(results) ? kExitOk : kExitValidationFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"single-photon scattering in a multimode rectangular waveguide "
                 "coupled to a driven Lambda emitter"};
    app.set_version_flag("--version", std::string(waveqed::kToolName) + " " +
                                          waveqed::kToolVersion);
    app.require_subcommand(1);

    CliState st;

    CLI::App* modes = app.add_subcommand("modes", "list coupled TM modes and cutoffs");
    add_common_flags(modes, st);
    modes->add_option("--max-cutoff", st.cfg.modes_omega_max,
                      "list modes with cutoff below this frequency");

    CLI::App* spec = app.add_subcommand("spectrum", "reflection/transmission sweep");
    add_common_flags(spec, st);
    spec->add_option("--input", st.cfg.input,
                     "input state: scss | sms:<n> | dark | equal | custom:re,im;...");
    spec->add_option("--omega-min", st.cfg.omega_min, "sweep start (defaults to band edge)");
    spec->add_option("--omega-max", st.cfg.omega_max, "sweep end (defaults to band edge)");
    spec->add_option("--omega-points", st.cfg.omega_points, "sweep point count");
    spec->add_option("--preset", st.preset_name,
                     "named parameter set: fig2c fig2d fig3a fig3b fig4");

    CLI::App* pmap = app.add_subcommand("phase-map",
                                        "peak-count map over the drive plane");
    add_common_flags(pmap, st);
    pmap->add_option("--rabi-min", st.cfg.rabi_min, "Rabi axis start");
    pmap->add_option("--rabi-max", st.cfg.rabi_max, "Rabi axis end");
    pmap->add_option("--rabi-points", st.cfg.rabi_points, "Rabi axis points");
    pmap->add_option("--detuning-min", st.cfg.detuning_min, "detuning axis start");
    pmap->add_option("--detuning-max", st.cfg.detuning_max, "detuning axis end");
    pmap->add_option("--detuning-points", st.cfg.detuning_points, "detuning axis points");
    pmap->add_option("--preset", st.preset_name, "named parameter set: fig2a");

    CLI::App* dressed = app.add_subcommand("dressed",
                                           "dressed-state frequencies of the drive");
    add_common_flags(dressed, st);

    CLI::App* validate = app.add_subcommand("validate", "run the release check suite");
    add_common_flags(validate, st);
    validate->add_option("--seed", st.cfg.seed, "random seed for the checks");
    validate->add_option("--pv-tol", st.cfg.pv_rel_tol,
                         "required relative agreement with the PV oracle");
    validate->add_flag("--flip-gamma-sign", st.cfg.flip_gamma_sign,
                       "test hook: flip the decay sign to break unitarity")
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfigError;
    }

    try {
        CLI::App* active = app.get_subcommands().front();
        merge_config_file(active, st);
        apply_text_options(st);
        if (modes->parsed()) return run_modes(st.cfg);
        if (spec->parsed()) return run_spectrum(st.cfg, st.preset_name);
        if (pmap->parsed()) return run_phase_map(st.cfg, st.preset_name);
        if (dressed->parsed()) return run_dressed(st.cfg);
        if (validate->parsed()) return run_validate(st.cfg);
        return kExitConfigError;
    } catch (const waveqed::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::domain_error& e) {
        std::cerr << "physics-domain error: " << e.what() << "\n";
        return kExitPhysicsError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPhysicsError;
    }
}
