#include "waveqed/scattering.hpp"

#include <cmath>
#include <string>

namespace waveqed {

namespace {

constexpr double kNormTol = 1e-9;

std::vector<Mode> channel_modes(const InputState& input, const SystemParams& params) {
    std::vector<Mode> modes;
    try {
        modes = propagating_modes(params.geom, input.omega);
    } catch (const BandEdgeError& e) {
        throw BandEdgeError(std::string(e.what()) +
                            "; use cutoff_limit for the one-sided limits");
    }
    if (static_cast<int>(modes.size()) != input.j_max())
        throw std::domain_error(
            "input state has " + std::to_string(input.j_max()) +
            " coefficients but " + std::to_string(modes.size()) +
            " coupled channels propagate at omega");
    if (modes.empty())
        throw std::domain_error("no coupled channel propagates at omega");
    return modes;
}

double norm_squared(const std::vector<std::complex<double>>& c) {
    double s = 0.0;
    for (const auto& v : c) s += std::norm(v);
    return s;
}

} // namespace

void SystemParams::validate() const {
    geom.validate();
    if (rabi < 0.0) throw ConfigError("Rabi frequency must be >= 0");
    if (!(g > 0.0)) throw ConfigError("coupling scale g must be > 0");
}

Resolvent resolvent(double omega, const SystemParams& params) {
    return resolvent(omega, params,
                     self_energy_total(omega, params.geom, params.g, params.truncation));
}

Resolvent resolvent(double omega, const SystemParams& params, const SelfEnergy& se) {
    Resolvent res;
    std::complex<double> value(omega - params.omega_e - se.lamb_shift, se.decay);
    if (params.rabi > 0.0) {
        const double denom = omega - params.omega_e + params.detuning;
        // symbolic pole: the caller-computed omega may match omega_e - detuning
        // bit-exactly even when the rounded denominator does not vanish
        if (denom == 0.0 || omega == params.omega_e - params.detuning) {
            res.eit_pole = true;
            return res;
        }
        value -= params.rabi * params.rabi / denom;
    }
    res.value = value;
    return res;
}

ScatteringResult scatter(const InputState& input, const SystemParams& params) {
    return scatter(input, params,
                   self_energy_total(input.omega, params.geom, params.g,
                                     params.truncation));
}

ScatteringResult scatter(const InputState& input, const SystemParams& params,
                         const SelfEnergy& se) {
    params.validate();
    const std::vector<Mode> modes = channel_modes(input, params);
    const int jmax = input.j_max();

    const double nrm = norm_squared(input.coeffs);
    if (std::abs(nrm - 1.0) > kNormTol)
        throw std::invalid_argument("input state is not normalized (|c|^2 = " +
                                    std::to_string(nrm) + ")");

    ScatteringResult out;
    out.G = resolvent(input.omega, params, se);
    out.r.assign(jmax, {0.0, 0.0});
    out.t.assign(jmax, {0.0, 0.0});
    out.R_per_mode.assign(jmax, 0.0);
    out.T_per_mode.assign(jmax, 0.0);

    std::vector<double> rho(jmax);
    std::vector<std::complex<double>> gk(jmax), gmk(jmax);
    double flux_norm = 0.0;  // sum |c_j|^2 / rho_j
    for (int j = 0; j < jmax; ++j) {
        const double kj = longitudinal_wavenumber(modes[j], input.omega);
        rho[j] = density_of_states(modes[j], input.omega);
        gk[j] = coupling_strength(modes[j], kj, params.g, params.geom);
        gmk[j] = coupling_strength(modes[j], -kj, params.g, params.geom);
        flux_norm += std::norm(input.coeffs[j]) / rho[j];
    }

    if (out.G.eit_pole) {
        // complete transmission: r_j = 0, t_j = c_j, independent of the input
        out.t = input.coeffs;
        for (int j = 0; j < jmax; ++j)
            out.T_per_mode[j] = std::norm(out.t[j]) / rho[j] / flux_norm;
        out.R_total = 0.0;
        out.T_total = 1.0;
        out.alpha = {0.0, 0.0};
        return out;
    }

    std::complex<double> overlap(0.0, 0.0);  // sum_j c_j g_{j,k_j}
    for (int j = 0; j < jmax; ++j) overlap += input.coeffs[j] * gk[j];

    const std::complex<double> amp =
        std::complex<double>(0.0, 2.0 * kPi) * overlap / out.G.value;

    for (int j = 0; j < jmax; ++j) {
        out.r[j] = -amp * rho[j] * std::conj(gmk[j]);
        out.t[j] = input.coeffs[j] - amp * rho[j] * std::conj(gk[j]);
        out.R_per_mode[j] = std::norm(out.r[j]) / rho[j] / flux_norm;
        out.T_per_mode[j] = std::norm(out.t[j]) / rho[j] / flux_norm;
        out.R_total += out.R_per_mode[j];
        out.T_total += out.T_per_mode[j];
    }
    out.alpha = overlap / out.G.value;
    return out;
}

InputState build_scss(double omega, const SystemParams& params) {
    const std::vector<Mode> modes = propagating_modes(params.geom, omega);
    if (modes.empty())
        throw std::domain_error("no coupled channel propagates at omega");
    InputState state;
    state.omega = omega;
    state.coeffs.resize(modes.size());
    double nrm = 0.0;
    for (std::size_t j = 0; j < modes.size(); ++j) {
        const double kj = longitudinal_wavenumber(modes[j], omega);
        const double rho = density_of_states(modes[j], omega);
        state.coeffs[j] =
            rho * std::conj(coupling_strength(modes[j], kj, params.g, params.geom));
        nrm += std::norm(state.coeffs[j]);
    }
    nrm = std::sqrt(nrm);
    for (auto& c : state.coeffs) c /= nrm;
    return state;
}

InputState build_single_mode(double omega, int channel, const SystemParams& params) {
    const std::vector<Mode> modes = propagating_modes(params.geom, omega);
    if (channel < 1 || channel > static_cast<int>(modes.size()))
        throw std::domain_error("single-mode channel " + std::to_string(channel) +
                                " not propagating at omega (j_max = " +
                                std::to_string(modes.size()) + ")");
    InputState state;
    state.omega = omega;
    state.coeffs.assign(modes.size(), {0.0, 0.0});
    state.coeffs[static_cast<std::size_t>(channel) - 1] = {1.0, 0.0};
    return state;
}

InputState build_dark_state(double omega, const SystemParams& params) {
    const std::vector<Mode> modes = propagating_modes(params.geom, omega);
    if (modes.size() < 2)
        throw std::domain_error(
            "dark state requires at least two propagating channels");
    const double k1 = longitudinal_wavenumber(modes[0], omega);
    const double k2 = longitudinal_wavenumber(modes[1], omega);
    const std::complex<double> g1 =
        coupling_strength(modes[0], k1, params.g, params.geom);
    const std::complex<double> g2 =
        coupling_strength(modes[1], k2, params.g, params.geom);

    InputState state;
    state.omega = omega;
    state.coeffs.assign(modes.size(), {0.0, 0.0});
    // c1 g1 + c2 g2 = g2 g1 - g1 g2 = 0 exactly, also in floating point
    state.coeffs[0] = g2;
    state.coeffs[1] = -g1;
    const double nrm = std::sqrt(std::norm(g1) + std::norm(g2));
    state.coeffs[0] /= nrm;
    state.coeffs[1] /= nrm;
    return state;
}

InputState build_equal_superposition(double omega, const SystemParams& params) {
    const std::vector<Mode> modes = propagating_modes(params.geom, omega);
    if (modes.empty())
        throw std::domain_error("no coupled channel propagates at omega");
    InputState state;
    state.omega = omega;
    state.coeffs.assign(modes.size(),
                        {1.0 / std::sqrt(static_cast<double>(modes.size())), 0.0});
    return state;
}

InputState make_custom_input(double omega, std::vector<std::complex<double>> coeffs,
                             const SystemParams& params) {
    const std::vector<Mode> modes = propagating_modes(params.geom, omega);
    if (coeffs.size() != modes.size())
        throw std::domain_error("custom input has " + std::to_string(coeffs.size()) +
                                " coefficients but j_max = " +
                                std::to_string(modes.size()));
    const double nrm = std::sqrt(norm_squared(coeffs));
    if (nrm == 0.0)
        throw std::domain_error("custom input vector must be nonzero");
    for (auto& c : coeffs) c /= nrm;
    InputState state;
    state.omega = omega;
    state.coeffs = std::move(coeffs);
    return state;
}

std::complex<double> emitter_amplitude(const InputState& input,
                                       const SystemParams& params) {
    const std::vector<Mode> modes = channel_modes(input, params);
    const Resolvent G = resolvent(input.omega, params);
    if (G.eit_pole) return {0.0, 0.0};
    std::complex<double> overlap(0.0, 0.0);
    for (std::size_t j = 0; j < modes.size(); ++j) {
        const double kj = longitudinal_wavenumber(modes[j], input.omega);
        overlap += input.coeffs[j] *
                   coupling_strength(modes[j], kj, params.g, params.geom);
    }
    return overlap / G.value;
}

InputState build_input(const InputSpec& spec, double omega,
                       const SystemParams& params) {
    switch (spec.kind) {
        case InputKind::Scss: return build_scss(omega, params);
        case InputKind::SingleMode:
            return build_single_mode(omega, spec.sms_channel, params);
        case InputKind::Dark: return build_dark_state(omega, params);
        case InputKind::Equal: return build_equal_superposition(omega, params);
        case InputKind::Custom: return make_custom_input(omega, spec.custom, params);
    }
    throw std::logic_error("unknown input kind");
}

CutoffLimitResult cutoff_limit(double omega_cutoff, CutoffSide side,
                               const InputSpec& spec, const SystemParams& params) {
    params.validate();
    // identify which coupled mode opens here
    const std::vector<Mode> modes =
        enumerate_coupled_modes(params.geom, omega_cutoff * 1.000001);
    int opening = 0;
    for (const Mode& mode : modes)
        if (mode.cutoff == omega_cutoff) opening = mode.channel;
    if (opening == 0)
        throw std::domain_error("omega is not a coupled-mode cutoff");

    if (side == CutoffSide::FromBelow) {
        if (opening == 1)
            throw std::domain_error("no propagating band below the first cutoff");
        // scattering is continuous at the top of the lower band
        const double omega = omega_cutoff - 1e-9 * std::max(1.0, omega_cutoff);
        const ScatteringResult res = scatter(build_input(spec, omega, params), params);
        return {res.R_total, res.T_total};
    }

    // From above the opening channel's Gamma diverges, so |G| -> infinity and
    // R -> Gamma_n^2/|G|^2 style limits:
    //   SCSS and the opening-channel SMS reflect completely,
    //   every other input transmits completely.
    switch (spec.kind) {
        case InputKind::Scss: return {1.0, 0.0};
        case InputKind::SingleMode:
            if (spec.sms_channel == opening) return {1.0, 0.0};
            return {0.0, 1.0};
        case InputKind::Dark: return {0.0, 1.0};
        case InputKind::Equal:
        case InputKind::Custom: {
            // finite weight on the opening channel is flux-suppressed; only a
            // state asymptotically concentrated in it would reflect
            return {0.0, 1.0};
        }
    }
    throw std::logic_error("unknown input kind");
}

} // namespace waveqed
