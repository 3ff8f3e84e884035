#include "waveqed/validation.hpp"

#include <cmath>
#include <random>

namespace waveqed {
namespace validation {

namespace {

// Self-contained adaptive Simpson so the oracles share no quadrature code
// with the production Gauss-Kronrod path.
double simpson_rec(const std::function<double(double)>& f, double a, double b,
                   double fa, double fm, double fb, double whole, double tol,
                   int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 52);
}

// tail of int dk / [w_k (w - w_k)] beyond K, mapped with t = 1/k
double pv_tail(double omega, double wj, double K, double tol) {
    auto f = [omega, wj](double t) {
        const double root = std::sqrt(1.0 + wj * wj * t * t);
        return 1.0 / (root * (omega * t - root));
    };
    return adaptive_simpson(f, 0.0, 1.0 / K, tol);
}

} // namespace

double lamb_shift_pv_oracle(const Mode& mode, double omega, double g) {
    if (!mode.coupled)
        throw std::invalid_argument("oracle requires a coupled mode");
    const double wj = mode.cutoff;
    if (omega == wj)
        throw BandEdgeError("oracle undefined exactly at the cutoff");

    const double prefactor = 2.0 * g * g * wj * wj;
    auto integrand = [omega, wj](double k) {
        const double wk = std::sqrt(wj * wj + k * k);
        return 1.0 / (wk * (omega - wk));
    };
    const double tol = 1e-13;

    if (omega < wj) {
        const double K = 2.0 * wj + 10.0;
        return prefactor *
               (adaptive_simpson(integrand, 0.0, K, tol) + pv_tail(omega, wj, K, tol));
    }

    const double kj = std::sqrt((omega - wj) * (omega + wj));
    const double K = 2.0 * kj + 10.0;
    auto windowed = [&](double eps) {
        return adaptive_simpson(integrand, 0.0, kj - eps, tol) +
               adaptive_simpson(integrand, kj + eps, K, tol);
    };

    // symmetric exclusion of a simple pole leaves an error series in odd
    // powers of eps; three Richardson stages remove eps, eps^3, eps^5
    const double eps0 = 0.1 * std::min(kj, K - kj);
    double table[4][4];
    for (int i = 0; i < 4; ++i)
        table[i][0] = windowed(eps0 / static_cast<double>(1 << i));
    const int powers[3] = {1, 3, 5};
    for (int level = 0; level < 3; ++level) {
        const double fac = static_cast<double>(1 << powers[level]);
        for (int i = 0; i + level + 1 < 4; ++i)
            table[i][level + 1] =
                (fac * table[i + 1][level] - table[i][level]) / (fac - 1.0);
    }
    return prefactor * (table[0][3] + pv_tail(omega, wj, K, tol));
}

double decay_rate_delta_oracle(const Mode& mode, double omega, double g) {
    if (!mode.coupled)
        throw std::invalid_argument("oracle requires a coupled mode");
    const double wj = mode.cutoff;
    if (omega <= wj) return 0.0;

    const double kj = std::sqrt((omega - wj) * (omega + wj));
    const double K = 10.0 * kj + 10.0;
    const double tol = 1e-13;

    auto gamma_eta = [&](double eta) {
        auto f = [omega, wj, g, eta](double k) {
            const double wk = std::sqrt(wj * wj + k * k);
            const double lorentz =
                (eta / kPi) / ((omega - wk) * (omega - wk) + eta * eta);
            return 2.0 * kPi * (g * g * wj * wj / wk) * lorentz;
        };
        double value = adaptive_simpson(f, 0.0, kj - 5.0 * eta, tol) +
                       adaptive_simpson(f, kj - 5.0 * eta, kj + 5.0 * eta, tol) +
                       adaptive_simpson(f, kj + 5.0 * eta, K, tol);
        auto tail = [omega, wj, g, eta](double t) {
            const double root = std::sqrt(1.0 + wj * wj * t * t);
            const double q = omega * t - root;
            return 2.0 * kPi * g * g * wj * wj * (eta / kPi) * t /
                   (root * (q * q + eta * eta * t * t));
        };
        return value + adaptive_simpson(tail, 0.0, 1.0 / K, tol);
    };

    const double eta0 = 0.05 * std::min(omega - wj, 1.0);
    double table[4][4];
    for (int i = 0; i < 4; ++i)
        table[i][0] = gamma_eta(eta0 / static_cast<double>(1 << i));
    const int powers[3] = {1, 2, 3};
    for (int level = 0; level < 3; ++level) {
        const double fac = static_cast<double>(1 << powers[level]);
        for (int i = 0; i + level + 1 < 4; ++i)
            table[i][level + 1] =
                (fac * table[i + 1][level] - table[i][level]) / (fac - 1.0);
    }
    return table[0][3];
}

namespace {

SystemParams standard_params(double omega_e) {
    SystemParams params;
    params.omega_e = omega_e;
    params.g = 0.1;
    params.geom = WaveguideGeometry{};
    return params;
}

CheckResult check_unitarity(const SuiteOptions& opts) {
    CheckResult check;
    check.name = "unitarity";
    check.threshold = 1e-12;

    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<int> band_pick(1, 3);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    const WaveguideGeometry geom{};
    double worst = 0.0;
    for (int s = 0; s < opts.unitarity_samples; ++s) {
        SystemParams params;
        params.geom = geom;
        params.geom.z0 = uni(rng) - 0.5;
        const Band band = band_by_index(params.geom, band_pick(rng));
        const double margin = 1e-3 * (band.hi - band.lo);
        const double omega = band.lo + margin + (band.hi - band.lo - 2.0 * margin) * uni(rng);
        params.omega_e = 0.5 * (band.lo + band.hi);
        params.rabi = 2.0 * uni(rng);
        params.detuning = -2.0 + 4.0 * uni(rng);
        params.g = 0.02 + 0.18 * uni(rng);

        std::vector<std::complex<double>> coeffs(static_cast<std::size_t>(band.j_max));
        for (auto& c : coeffs) c = {gauss(rng), gauss(rng)};
        InputState input = make_custom_input(omega, std::move(coeffs), params);

        SelfEnergy se = self_energy_total(omega, params.geom, params.g,
                                          params.truncation);
        if (opts.flip_gamma_sign) {
            se.decay = -se.decay;
            for (auto& entry : se.per_mode) entry.decay = -entry.decay;
        }
        const ScatteringResult res = scatter(input, params, se);
        worst = std::max(worst, std::abs(res.R_total + res.T_total - 1.0));
    }
    check.worst = worst;
    check.pass = worst <= check.threshold;
    check.detail = "max |R+T-1| over " + std::to_string(opts.unitarity_samples) +
                   " random samples";
    return check;
}

CheckResult check_closed_forms(const SuiteOptions& opts) {
    CheckResult check;
    check.name = "closed-form-equivalence";
    check.threshold = 1e-12;

    std::mt19937_64 rng(opts.seed + 1);
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    double worst = 0.0;
    const WaveguideGeometry geom{};

    auto sample_omega = [&](const Band& band) {
        const double margin = 1e-3 * (band.hi - band.lo);
        return band.lo + margin + (band.hi - band.lo - 2.0 * margin) * uni(rng);
    };

    for (int s = 0; s < opts.closed_form_samples; ++s) {
        // single-mode regime: R = Gamma_1^2 / |G|^2
        {
            const Band band = band_by_index(geom, 1);
            SystemParams params = standard_params(0.5 * (band.lo + band.hi));
            params.rabi = 2.0 * uni(rng);
            params.detuning = -2.0 + 4.0 * uni(rng);
            const double omega = sample_omega(band);
            const SelfEnergy se =
                self_energy_total(omega, geom, params.g, params.truncation);
            const Resolvent G = resolvent(omega, params, se);
            const ScatteringResult res =
                scatter(build_single_mode(omega, 1, params), params, se);
            if (!G.eit_pole) {
                const double expected = se.decay * se.decay / std::norm(G.value);
                worst = std::max(worst, std::abs(res.R_total - expected));
                worst = std::max(worst, std::abs(res.T_total - (1.0 - expected)));
            }
        }
        // two-mode band: coherent superposition and single-mode state forms
        {
            const Band band = band_by_index(geom, 2);
            SystemParams params = standard_params(0.5 * (band.lo + band.hi));
            params.rabi = 2.0 * uni(rng);
            params.detuning = -2.0 + 4.0 * uni(rng);
            params.geom.z0 = uni(rng) - 0.5;
            const double omega = sample_omega(band);
            const SelfEnergy se =
                self_energy_total(omega, params.geom, params.g, params.truncation);
            const Resolvent G = resolvent(omega, params, se);
            if (G.eit_pole) continue;
            const double absG2 = std::norm(G.value);
            const double gamma = se.decay;

            std::vector<double> gamma_j;
            for (const auto& entry : se.per_mode)
                if (entry.decay > 0.0) gamma_j.push_back(entry.decay);

            const ScatteringResult scss =
                scatter(build_scss(omega, params), params, se);
            worst = std::max(worst,
                             std::abs(scss.R_total - gamma * gamma / absG2));
            for (std::size_t j = 0; j < gamma_j.size(); ++j) {
                const double Rj = gamma_j[j] * gamma / absG2;
                worst = std::max(worst, std::abs(scss.R_per_mode[j] - Rj));
                worst = std::max(
                    worst, std::abs(scss.T_per_mode[j] - (gamma_j[j] / gamma - Rj)));
            }

            const int n = 1 + static_cast<int>(uni(rng) * 2.0) % 2;
            const ScatteringResult sms =
                scatter(build_single_mode(omega, n, params), params, se);
            worst = std::max(
                worst, std::abs(sms.R_total - gamma * gamma_j[n - 1] / absG2));
            const std::complex<double> tn =
                1.0 - std::complex<double>(0.0, gamma_j[n - 1]) / G.value;
            worst = std::max(
                worst, std::abs(sms.T_per_mode[n - 1] - std::norm(tn)));
            for (std::size_t j = 0; j < gamma_j.size(); ++j) {
                if (static_cast<int>(j) == n - 1) {
                    worst = std::max(worst,
                                     std::abs(sms.R_per_mode[j] -
                                              gamma_j[j] * gamma_j[j] / absG2));
                    continue;
                }
                const double cross = gamma_j[n - 1] * gamma_j[j] / absG2;
                worst = std::max(worst, std::abs(sms.R_per_mode[j] - cross));
                worst = std::max(worst, std::abs(sms.T_per_mode[j] - cross));
            }
        }
    }
    check.worst = worst;
    check.pass = worst <= check.threshold;
    check.detail = "max |scatter - closed form| over " +
                   std::to_string(opts.closed_form_samples) + " draws per family";
    return check;
}

CheckResult check_pv_oracle(const SuiteOptions& opts) {
    CheckResult check;
    check.name = "lamb-shift-pv-oracle";
    check.threshold = opts.pv_rel_tol;

    std::mt19937_64 rng(opts.seed + 2);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const WaveguideGeometry geom{};
    const std::vector<Mode> modes = enumerate_coupled_modes(geom, 11.0);

    QuadConfig quad;
    quad.abs_tol = opts.quad_abs_tol;

    double worst = 0.0;
    for (int s = 0; s < opts.pv_samples; ++s) {
        const Mode& mode = modes[static_cast<std::size_t>(uni(rng) * modes.size()) %
                                 modes.size()];
        double omega = 0.0;
        do {
            omega = 0.5 + 11.5 * uni(rng);
        } while (std::abs(omega - mode.cutoff) < 0.2);
        const double g = 0.02 + 0.18 * uni(rng);
        const double fast = lamb_shift_mode(mode, omega, g, quad);
        const double slow = lamb_shift_pv_oracle(mode, omega, g);
        worst = std::max(worst, std::abs(fast - slow) / std::abs(slow));
    }
    check.worst = worst;
    check.pass = worst <= check.threshold;
    check.detail = "max relative deviation over " + std::to_string(opts.pv_samples) +
                   " (mode, omega, g) draws";
    return check;
}

CheckResult check_table1(const SuiteOptions& opts) {
    CheckResult check;
    check.name = "peak-count-sign-rule";
    check.threshold = 0.0;

    std::mt19937_64 rng(opts.seed + 3);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const WaveguideGeometry geom{};
    const Band band = band_by_index(geom, 1);
    SystemParams params = standard_params(0.5 * (band.lo + band.hi));
    SelfEnergyEvaluator se(geom, params.g, params.truncation);
    const std::vector<double> grid = crp_scan_grid(band);
    se.precompute(grid);

    int mismatches = 0;
    for (int s = 0; s < opts.table1_samples; ++s) {
        params.rabi = 2.0 * uni(rng);
        params.detuning = -2.0 + 4.0 * uni(rng);
        const PeakPrediction pred = predict_peaks(band, params, se);
        const PeakReport found =
            find_crp(band, CrpInputKind::SingleModeRegime, params, se);
        if (pred.crp != found.crp_count() || pred.ctp != found.ctp_count() ||
            pred.ctp != count_ctp(band, params))
            ++mismatches;
    }
    check.worst = static_cast<double>(mismatches);
    check.pass = mismatches == 0;
    check.detail = std::to_string(mismatches) + " mismatches over " +
                   std::to_string(opts.table1_samples) + " random drive settings";
    return check;
}

} // namespace

std::vector<CheckResult> run_suite(const SuiteOptions& opts) {
    std::vector<CheckResult> results;
    results.push_back(check_unitarity(opts));
    results.push_back(check_closed_forms(opts));
    results.push_back(check_pv_oracle(opts));
    results.push_back(check_table1(opts));
    return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

} // namespace validation
} // namespace waveqed
