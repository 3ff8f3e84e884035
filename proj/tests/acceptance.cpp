// Acceptance suite: end-to-end checks of the physics engine, one line per
// criterion. Exits nonzero if any criterion fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace {
std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}
}  // namespace

#include "waveqed/analysis.hpp"
#include "waveqed/runconfig.hpp"
#include "waveqed/validation.hpp"

using namespace waveqed;

namespace {

constexpr double kPiVal = 3.14159265358979323846;

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> body;
};

SystemParams params_for_band(int j, double rabi, double detuning, double g) {
    SystemParams params;
    const Band band = band_by_index(params.geom, j);
    params.omega_e = 0.5 * (band.lo + band.hi);
    params.rabi = rabi;
    params.detuning = detuning;
    params.g = g;
    return params;
}

InputState random_input(double omega, const SystemParams& params,
                        std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::complex<double>> c(propagating_modes(params.geom, omega).size());
    for (auto& v : c) v = {gauss(rng), gauss(rng)};
    return make_custom_input(omega, std::move(c), params);
}

// ---------------------------------------------------------------- criterion 1
bool cutoff_reproduction(std::string& detail) {
    const WaveguideGeometry geom{};
    const auto modes = enumerate_coupled_modes(geom, 11.0);
    const double expected[4] = {3.78, 7.02, 9.65, 10.93};
    if (modes.size() != 4) {
        detail = "expected 4 coupled modes below omega = 11";
        return false;
    }
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        worst = std::max(worst, std::abs(modes[static_cast<std::size_t>(i)].cutoff -
                                         expected[i]));
    detail = "max |cutoff - reference| = " + num(worst);
    return worst <= 0.01;
}

// ---------------------------------------------------------------- criterion 2
bool unitarity(std::string& detail) {
    std::mt19937_64 rng(0xACCE5501);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        SystemParams params;
        params.geom.z0 = uni(rng) - 0.5;
        const Band band = band_by_index(params.geom, 1 + i % 3);
        params.omega_e = 0.5 * (band.lo + band.hi);
        params.rabi = 2.0 * uni(rng);
        params.detuning = -2.0 + 4.0 * uni(rng);
        params.g = 0.02 + 0.18 * uni(rng);
        const double margin = 1e-3 * (band.hi - band.lo);
        const double omega =
            band.lo + margin + (band.hi - band.lo - 2.0 * margin) * uni(rng);
        const ScatteringResult res = scatter(random_input(omega, params, rng), params);
        worst = std::max(worst, std::abs(res.R_total + res.T_total - 1.0));
    }
    detail = "max |R+T-1| = " + num(worst) + " over 1000 samples";
    return worst <= 1e-12;
}

// ---------------------------------------------------------------- criterion 3
bool eit_exactness(std::string& detail) {
    std::mt19937_64 rng(0xACCE5503);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    int exact = 0;
    for (int i = 0; i < 50; ++i) {
        SystemParams params;
        const Band band = band_by_index(params.geom, 1 + i % 2);
        params.omega_e = 0.5 * (band.lo + band.hi);
        params.rabi = 0.1 + 1.9 * uni(rng);
        params.g = 0.02 + 0.18 * uni(rng);
        // detuning drawn strictly inside the EIT window
        const double width = band.hi - band.lo;
        const double pole = band.lo + width * (0.05 + 0.9 * uni(rng));
        params.detuning = params.omega_e - pole;

        const double omega = params.omega_e - params.detuning;
        const ScatteringResult res = scatter(random_input(omega, params, rng), params);
        if (res.R_total == 0.0 && res.T_total == 1.0) ++exact;
    }
    detail = std::to_string(exact) + "/50 poles exactly transparent";
    return exact == 50;
}

// ---------------------------------------------------------------- criterion 4
bool closed_form_equivalence(std::string& detail) {
    std::mt19937_64 rng(0xACCE5504);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double worst = 0.0;

    auto in_band = [&](const Band& band) {
        const double margin = 1e-3 * (band.hi - band.lo);
        return band.lo + margin + (band.hi - band.lo - 2.0 * margin) * uni(rng);
    };

    // single-mode closed form
    for (int i = 0; i < 100; ++i) {
        SystemParams params = params_for_band(1, 2.0 * uni(rng), -2.0 + 4.0 * uni(rng), 0.1);
        const Band band = band_by_index(params.geom, 1);
        const double omega = in_band(band);
        const SelfEnergy se =
            self_energy_total(omega, params.geom, params.g, params.truncation);
        const Resolvent G = resolvent(omega, params, se);
        if (G.eit_pole) continue;
        const ScatteringResult res =
            scatter(build_single_mode(omega, 1, params), params, se);
        worst = std::max(worst, std::abs(res.R_total - se.decay * se.decay /
                                                           std::norm(G.value)));
    }

    // coherent superposition and single-mode state in the two-mode band
    for (int i = 0; i < 100; ++i) {
        SystemParams params = params_for_band(2, 2.0 * uni(rng), -2.0 + 4.0 * uni(rng), 0.1);
        params.geom.z0 = uni(rng) - 0.5;
        const Band band = band_by_index(params.geom, 2);
        const double omega = in_band(band);
        const SelfEnergy se =
            self_energy_total(omega, params.geom, params.g, params.truncation);
        const Resolvent G = resolvent(omega, params, se);
        if (G.eit_pole) continue;
        const double absG2 = std::norm(G.value);
        const double gamma = se.decay;

        const ScatteringResult scss = scatter(build_scss(omega, params), params, se);
        worst = std::max(worst, std::abs(scss.R_total - gamma * gamma / absG2));
        for (int j = 0; j < 2; ++j) {
            const double gj = se.per_mode[static_cast<std::size_t>(j)].decay;
            worst = std::max(worst, std::abs(scss.R_per_mode[static_cast<std::size_t>(j)] -
                                             gj * gamma / absG2));
            worst = std::max(
                worst, std::abs(scss.T_per_mode[static_cast<std::size_t>(j)] -
                                (gj / gamma -
                                 scss.R_per_mode[static_cast<std::size_t>(j)])));
        }

        const int n = 1 + i % 2;
        const double gn = se.per_mode[static_cast<std::size_t>(n - 1)].decay;
        const ScatteringResult sms =
            scatter(build_single_mode(omega, n, params), params, se);
        worst = std::max(worst, std::abs(sms.R_total - gamma * gn / absG2));
        const std::complex<double> tn =
            1.0 - std::complex<double>(0.0, gn) / G.value;
        worst = std::max(worst,
                         std::abs(sms.T_per_mode[static_cast<std::size_t>(n - 1)] -
                                  std::norm(tn)));
        for (int j = 1; j <= 2; ++j) {
            if (j == n) continue;
            const double gj = se.per_mode[static_cast<std::size_t>(j - 1)].decay;
            worst = std::max(worst,
                             std::abs(sms.R_per_mode[static_cast<std::size_t>(j - 1)] -
                                      gn * gj / absG2));
            worst = std::max(worst,
                             std::abs(sms.T_per_mode[static_cast<std::size_t>(j - 1)] -
                                      gn * gj / absG2));
        }
    }
    detail = "max |scatter - closed form| = " + num(worst);
    return worst <= 1e-12;
}

// ---------------------------------------------------------------- criterion 5
bool table1_grid(std::string& detail) {
    SystemParams params = params_for_band(1, 0.0, 0.0, 0.1);
    const Band band = band_by_index(params.geom, 1);
    SelfEnergyEvaluator se(params.geom, params.g, params.truncation);
    se.precompute(crp_scan_grid(band));

    const double window_lo = params.omega_e - band.hi;
    const double window_hi = params.omega_e - band.lo;

    int crp_mismatch = 0, ctp_mismatch = 0;
    for (int i = 0; i < 50; ++i) {
        params.rabi = 2.0 * static_cast<double>(i) / 49.0;
        for (int j = 0; j < 50; ++j) {
            params.detuning = -2.0 + 4.0 * static_cast<double>(j) / 49.0;
            const PeakPrediction pred = predict_peaks(band, params, se);
            const PeakReport found =
                find_crp(band, CrpInputKind::SingleModeRegime, params, se);
            if (pred.crp != found.crp_count()) ++crp_mismatch;
            const bool inside =
                window_lo < params.detuning && params.detuning < window_hi;
            if (found.ctp_count() != (inside ? 1 : 0)) ++ctp_mismatch;
        }
    }
    detail = std::to_string(crp_mismatch) + " CRP mismatches, " +
             std::to_string(ctp_mismatch) + " CTP mismatches on the 50x50 grid";
    return crp_mismatch == 0 && ctp_mismatch == 0;
}

// ---------------------------------------------------------------- criterion 6
bool dressed_state_convergence(std::string& detail) {
    const Band band = band_by_index(WaveguideGeometry{}, 1);
    std::vector<double> dist;
    for (double g : {0.005, 0.01, 0.02}) {
        SystemParams params = params_for_band(1, 1.0, 0.5, g);
        const DressedStates d = dressed_states(params);
        const PeakReport report =
            find_crp(band, CrpInputKind::SingleModeRegime, params);
        if (report.crp_count() != 2) {
            detail = "expected two reflection peaks at g = " + std::to_string(g);
            return false;
        }
        double worst = 0.0;
        for (double root : report.crp)
            worst = std::max(worst, std::min(std::abs(root - d.nu_tilde_plus),
                                             std::abs(root - d.nu_tilde_minus)));
        dist.push_back(worst);
    }
    const double r1 = dist[1] / dist[0];
    const double r2 = dist[2] / dist[1];
    detail = "distances " + num(dist[0]) + " / " + num(dist[1]) + " / " +
             num(dist[2]) + ", ratios " + num(r1) + ", " + num(r2);
    const bool decreasing = dist[0] < dist[1] && dist[1] < dist[2];
    const bool quadratic = r1 > 2.0 && r1 < 8.0 && r2 > 2.0 && r2 < 8.0;
    return decreasing && quadratic;
}

// ---------------------------------------------------------------- criterion 7
bool input_state_dependence(std::string& detail) {
    const SystemParams params = params_for_band(2, 0.5, 0.0, 0.1);
    const Band band = band_by_index(params.geom, 2);

    const PeakReport peaks = find_crp(band, CrpInputKind::Scss, params);
    if (peaks.crp_count() < 1) {
        detail = "no Fano resonance found in the two-mode band";
        return false;
    }
    const double w = peaks.crp[0];
    const SelfEnergy se =
        self_energy_total(w, params.geom, params.g, params.truncation);

    const double scss_R = scatter(build_scss(w, params), params, se).R_total;
    if (scss_R < 1.0 - 1e-9) {
        detail = "superposition input fails complete reflection: R = " + num(scss_R);
        return false;
    }
    for (int n = 1; n <= 2; ++n) {
        const double bound = se.per_mode[static_cast<std::size_t>(n - 1)].decay / se.decay;
        const double R = scatter(build_single_mode(w, n, params), params, se).R_total;
        if (!(R <= bound + 1e-9) || !(bound + 1e-9 < 1.0)) {
            detail = "single-mode bound violated for channel " + std::to_string(n);
            return false;
        }
    }
    const auto grid = make_omega_grid(band.lo, band.hi, 400, params);
    double dark_worst = 0.0;
    for (const auto& row : spectrum(grid, InputSpec{InputKind::Dark, 1, {}}, params))
        dark_worst = std::max(dark_worst, row.R_total);
    detail = "SCSS R = 1 - " + num(1.0 - scss_R) +
             ", dark-state max R = " + num(dark_worst);
    return dark_worst <= 1e-12;
}

// ---------------------------------------------------------------- criterion 8
bool pv_oracle(std::string& detail) {
    std::mt19937_64 rng(0xACCE5508);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const WaveguideGeometry geom{};
    const auto modes = enumerate_coupled_modes(geom, 11.0);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const Mode& mode = modes[static_cast<std::size_t>(i) % 3];
        const double omega = mode.cutoff + 0.2 + (13.0 - mode.cutoff - 0.2) * uni(rng);
        const double g = 0.02 + 0.18 * uni(rng);
        const double fast = lamb_shift_mode(mode, omega, g);
        const double slow = validation::lamb_shift_pv_oracle(mode, omega, g);
        worst = std::max(worst, std::abs(fast - slow) / std::abs(slow));
    }
    detail = "max relative deviation = " + num(worst) + " over 20 in-band points";
    return worst < 1e-6;
}

// ---------------------------------------------------------------- criterion 9
int nu_tilde_classification(const SystemParams& params, const Band& band) {
    const DressedStates d = dressed_states(params);
    if (params.rabi == 0.0)
        return (band.lo < d.nu_tilde_plus && d.nu_tilde_plus < band.hi) ? 1 : 0;
    int count = 0;
    if (band.lo < d.nu_tilde_plus && d.nu_tilde_plus < band.hi) ++count;
    if (band.lo < d.nu_tilde_minus && d.nu_tilde_minus < band.hi) ++count;
    return count;
}

bool figure_regression(std::string& detail) {
    // fig2d: drive sweep in the single-mode band walks through the
    // two / one / zero reflection-peak regimes
    {
        const Band band = band_by_index(WaveguideGeometry{}, 1);
        const double rabis[4] = {0.0, 1.0, 1.5, 2.0};
        const int expected[4] = {1, 2, 1, 0};
        for (int i = 0; i < 4; ++i) {
            SystemParams params = params_for_band(1, rabis[i], 0.5, 0.1);
            const PeakReport report =
                find_crp(band, CrpInputKind::SingleModeRegime, params);
            SelfEnergyEvaluator se(params.geom, params.g, params.truncation);
            const PeakPrediction pred = predict_peaks(band, params, se);
            const int classified = nu_tilde_classification(params, band);
            if (report.crp_count() != expected[i] || pred.crp != expected[i] ||
                classified != expected[i]) {
                detail = "fig2d rabi = " + std::to_string(rabis[i]) + ": found " +
                         std::to_string(report.crp_count()) + ", sign rule " +
                         std::to_string(pred.crp) + ", dressed classification " +
                         std::to_string(classified) + ", expected " +
                         std::to_string(expected[i]);
                return false;
            }
            if (report.ctp_count() != 1) {
                detail = "fig2d should keep its transmission peak at every drive";
                return false;
            }
        }
    }

    // fig3a / fig3b: the coherent superposition shows the double-dip complete
    // reflection and the exact transmission point; the dark state stays flat;
    // single-mode inputs never reach R = 1
    for (int which = 0; which < 2; ++which) {
        const int band_index = which == 0 ? 2 : 3;
        const double g = which == 0 ? 0.1 : 0.05;
        SystemParams params = params_for_band(band_index, 0.5, 0.0, g);
        const Band band = band_by_index(params.geom, band_index);
        const std::string tag = which == 0 ? "fig3a" : "fig3b";

        const PeakReport report = find_crp(band, CrpInputKind::Scss, params);
        if (report.crp_count() != 2) {
            detail = tag + ": expected the double-dip signature, found " +
                     std::to_string(report.crp_count()) + " peaks";
            return false;
        }
        for (double R : report.crp_reflectance)
            if (R < 1.0 - 1e-9) {
                detail = tag + ": reflection peak below unity";
                return false;
            }
        if (report.ctp_count() != 1 ||
            report.ctp[0] != params.omega_e - params.detuning) {
            detail = tag + ": transmission peak missing or displaced";
            return false;
        }
        if (scatter(build_scss(report.ctp[0], params), params).R_total != 0.0) {
            detail = tag + ": transmission point is not exactly transparent";
            return false;
        }

        const auto grid = make_omega_grid(band.lo, band.hi, 400, params);
        for (const auto& row :
             spectrum(grid, InputSpec{InputKind::Dark, 1, {}}, params)) {
            if (row.R_total > 1e-12) {
                detail = tag + ": dark state reflects";
                return false;
            }
        }
        for (int n = 1; n <= band_index; ++n) {
            // pointwise branching-ratio bound R <= Gamma_n / Gamma; away from
            // the opening cutoff this keeps single-mode inputs strictly below
            // complete reflection
            const auto rows =
                spectrum(grid, InputSpec{InputKind::SingleMode, n, {}}, params);
            for (const auto& row : rows) {
                const SelfEnergy se = self_energy_total(row.omega, params.geom,
                                                        params.g, params.truncation);
                const double bound =
                    se.per_mode[static_cast<std::size_t>(n - 1)].decay / se.decay;
                if (row.R_total > bound + 1e-9) {
                    detail = tag + ": single-mode input " + std::to_string(n) +
                             " exceeds its branching-ratio bound";
                    return false;
                }
            }
            const double interior_cut = band.lo + 0.05 * (band.hi - band.lo);
            for (const auto& row : rows) {
                if (row.omega > interior_cut && row.R_total >= 1.0 - 1e-6) {
                    detail = tag + ": single-mode input " + std::to_string(n) +
                             " reaches complete reflection inside the band";
                    return false;
                }
            }
        }
        // at the band's lower edge the just-opened channel reflects while
        // every other single-mode input passes through
        {
            const double edge = grid.front();
            const double highest =
                scatter(build_single_mode(edge, band_index, params), params).R_total;
            const double lowest =
                scatter(build_single_mode(edge, 1, params), params).T_total;
            if (highest < 0.99 || lowest < 0.99) {
                detail = tag + ": cutoff behaviour of the single-mode inputs is off";
                return false;
            }
        }
    }
    detail = "fig2d regimes 1/2/1/0; fig3a+fig3b double dips, flat dark states, "
             "bounded single-mode peaks";
    return true;
}

} // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"cutoff reproduction", cutoff_reproduction},
        {"unitarity", unitarity},
        {"EIT exactness", eit_exactness},
        {"closed-form equivalence", closed_form_equivalence},
        {"peak-count table consistency", table1_grid},
        {"dressed-state convergence", dressed_state_convergence},
        {"input-state dependence", input_state_dependence},
        {"principal-value oracle", pv_oracle},
        {"figure regression", figure_regression},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        bool pass = false;
        try {
            pass = criteria[i].body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] criterion %zu: %s — %s\n", pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].name.c_str(), detail.c_str());
        if (!pass) ++failures;
    }
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
