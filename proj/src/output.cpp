#include "waveqed/output.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>

#include "waveqed/version.hpp"

namespace waveqed {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

nlohmann::ordered_json output_metadata(const RunConfig& cfg) {
    nlohmann::ordered_json meta;
    meta["tool"] = kToolName;
    meta["version"] = kToolVersion;
    meta["config"] = cfg.to_json();
    return meta;
}

namespace {

std::string csv_header(const RunConfig& cfg) {
    std::string head;
    head += "# ";
    head += kToolName;
    head += " ";
    head += kToolVersion;
    head += "\n# config ";
    head += cfg.to_json().dump();
    head += "\n";
    return head;
}

nlohmann::ordered_json truncation_report(const RunConfig& cfg) {
    const SystemParams params = cfg.system_params();
    nlohmann::ordered_json rep;
    try {
        const SelfEnergy se = self_energy_total(params.omega_e, params.geom,
                                                params.g, params.truncation);
        nlohmann::ordered_json modes = nlohmann::ordered_json::array();
        for (const auto& entry : se.per_mode)
            modes.push_back({{"channel", entry.channel},
                             {"m", entry.m},
                             {"n", entry.n},
                             {"cutoff", entry.cutoff}});
        rep["modes"] = modes;
        rep["lamb_shift_partial_sums_at_omega_e"] = se.lamb_shift_partial_sums;
        rep["lamb_shift_at_omega_e"] = se.lamb_shift;
    } catch (const std::exception& e) {
        rep["error"] = e.what();
    }
    return rep;
}

} // namespace

std::string spectrum_csv(const RunConfig& cfg, const std::vector<SpectrumRow>& rows) {
    std::string out = csv_header(cfg);

    const SystemParams params = cfg.system_params();
    const Band band = cfg.resolved_band();
    if (params.rabi > 0.0 && detuning_in_eit_window(band, params))
        out += "# ctp_omega " +
               format_double(params.omega_e - params.detuning) + "\n";

    std::size_t jmax = 0;
    for (const auto& row : rows) jmax = std::max(jmax, row.R.size());

    out += "omega,R_total,T_total,ReG,ImG";
    for (std::size_t j = 1; j <= jmax; ++j) out += ",R_" + std::to_string(j);
    for (std::size_t j = 1; j <= jmax; ++j) out += ",T_" + std::to_string(j);
    out += "\n";

    for (const auto& row : rows) {
        out += format_double(row.omega);
        out += ",";
        out += format_double(row.R_total);
        out += ",";
        out += format_double(row.T_total);
        out += ",";
        out += format_double(row.reG);
        out += ",";
        out += format_double(row.imG);
        for (std::size_t j = 0; j < jmax; ++j) {
            out += ",";
            out += format_double(j < row.R.size()
                                     ? row.R[j]
                                     : std::numeric_limits<double>::quiet_NaN());
        }
        for (std::size_t j = 0; j < jmax; ++j) {
            out += ",";
            out += format_double(j < row.T.size()
                                     ? row.T[j]
                                     : std::numeric_limits<double>::quiet_NaN());
        }
        out += "\n";
    }
    return out;
}

nlohmann::ordered_json spectrum_json(const RunConfig& cfg,
                                     const std::vector<SpectrumRow>& rows) {
    nlohmann::ordered_json j = output_metadata(cfg);
    j["truncation"] = truncation_report(cfg);

    const SystemParams params = cfg.system_params();
    const Band band = cfg.resolved_band();
    if (params.rabi > 0.0 && detuning_in_eit_window(band, params))
        j["ctp_omega"] = params.omega_e - params.detuning;

    std::size_t jmax = 0;
    for (const auto& row : rows) jmax = std::max(jmax, row.R.size());

    nlohmann::ordered_json data;
    auto column = [&rows](auto getter) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& row : rows) arr.push_back(getter(row));
        return arr;
    };
    data["omega"] = column([](const SpectrumRow& r) { return r.omega; });
    data["R_total"] = column([](const SpectrumRow& r) { return r.R_total; });
    data["T_total"] = column([](const SpectrumRow& r) { return r.T_total; });
    data["ReG"] = column([](const SpectrumRow& r) { return r.reG; });
    data["ImG"] = column([](const SpectrumRow& r) { return r.imG; });
    for (std::size_t ch = 0; ch < jmax; ++ch) {
        data["R_" + std::to_string(ch + 1)] = column([ch](const SpectrumRow& r) {
            return ch < r.R.size() ? r.R[ch]
                                   : std::numeric_limits<double>::quiet_NaN();
        });
        data["T_" + std::to_string(ch + 1)] = column([ch](const SpectrumRow& r) {
            return ch < r.T.size() ? r.T[ch]
                                   : std::numeric_limits<double>::quiet_NaN();
        });
    }
    j["data"] = data;

    nlohmann::ordered_json failures = nlohmann::ordered_json::array();
    for (const auto& row : rows)
        if (!row.ok)
            failures.push_back({{"omega", row.omega}, {"error", row.error}});
    j["failures"] = failures;
    return j;
}

std::string phase_map_csv(const RunConfig& cfg, const PhaseMapResult& map) {
    std::string out = csv_header(cfg);
    out += "rabi,detuning,ctp,crp\n";
    for (const auto& cell : map.cells) {
        out += format_double(cell.rabi);
        out += ",";
        out += format_double(cell.detuning);
        out += ",";
        out += std::to_string(cell.ctp);
        out += ",";
        out += std::to_string(cell.crp);
        out += "\n";
    }
    return out;
}

nlohmann::ordered_json phase_map_json(const RunConfig& cfg, const PhaseMapResult& map) {
    nlohmann::ordered_json j = output_metadata(cfg);
    j["axes"] = {{"rabi", map.rabi_axis}, {"detuning", map.detuning_axis}};
    nlohmann::ordered_json cells = nlohmann::ordered_json::array();
    for (const auto& cell : map.cells)
        cells.push_back({{"rabi", cell.rabi},
                         {"detuning", cell.detuning},
                         {"ctp", cell.ctp},
                         {"crp", cell.crp}});
    j["cells"] = cells;
    return j;
}

std::string modes_csv(const RunConfig& cfg, const std::vector<Mode>& modes) {
    std::string out = csv_header(cfg);
    out += "j,m,n,cutoff\n";
    for (const Mode& mode : modes) {
        out += std::to_string(mode.channel);
        out += ",";
        out += std::to_string(mode.m);
        out += ",";
        out += std::to_string(mode.n);
        out += ",";
        out += format_double(mode.cutoff);
        out += "\n";
    }
    return out;
}

nlohmann::ordered_json modes_json(const RunConfig& cfg, const std::vector<Mode>& modes) {
    nlohmann::ordered_json j = output_metadata(cfg);
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Mode& mode : modes)
        arr.push_back({{"j", mode.channel},
                       {"m", mode.m},
                       {"n", mode.n},
                       {"cutoff", mode.cutoff}});
    j["modes"] = arr;
    return j;
}

nlohmann::ordered_json dressed_json(const RunConfig& cfg, const DressedStates& d) {
    nlohmann::ordered_json j = output_metadata(cfg);
    j["dressed"] = {{"nu_plus", d.nu_plus},
                    {"nu_minus", d.nu_minus},
                    {"theta", d.theta},
                    {"nu_tilde_plus", d.nu_tilde_plus},
                    {"nu_tilde_minus", d.nu_tilde_minus},
                    {"lamb_shift_at_omega_e", d.lamb_shift_at_omega_e}};
    return j;
}

nlohmann::ordered_json validation_json(
    const RunConfig& cfg, const std::vector<validation::CheckResult>& results) {
    nlohmann::ordered_json j = output_metadata(cfg);
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& r : results)
        checks.push_back({{"name", r.name},
                          {"pass", r.pass},
                          {"worst", r.worst},
                          {"threshold", r.threshold},
                          {"detail", r.detail}});
    j["checks"] = checks;
    j["all_pass"] = validation::all_passed(results);
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ConfigError("cannot open output file: " + path);
    file << content;
    if (!file) throw ConfigError("failed writing output file: " + path);
}

} // namespace waveqed
