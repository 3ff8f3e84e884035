#include "waveqed/selfenergy.hpp"

#include <cmath>
#include <string>

namespace waveqed {

double decay_rate_mode(const Mode& mode, double omega, double g) {
    if (!mode.coupled)
        throw std::invalid_argument("decay_rate_mode: mode does not couple (even m or n)");
    if (omega == mode.cutoff)
        throw BandEdgeError("decay rate diverges at the mode cutoff");
    if (omega < mode.cutoff) return 0.0;
    const double kj = std::sqrt((omega - mode.cutoff) * (omega + mode.cutoff));
    return 2.0 * kPi * g * g * mode.cutoff * mode.cutoff / kj;
}

/*
 * Lamb shift of one mode.
 *
 * With |g_{j,k}|^2 = g^2 wj^2 / omega_{j,k} and the substitution
 * w' = omega_{j,k} = sqrt(wj^2 + k^2) (both half-lines contribute equally),
 *
 *   Delta_j(w) = 2 g^2 wj^2  PV int_{wj}^inf dw' / [ (w - w') sqrt(w'^2 - wj^2) ].
 *
 * The integrable 1/sqrt endpoint at w' = wj is removed by w' = wj cosh(u):
 *
 *   Delta_j(w) = 2 g^2 wj^2  PV int_0^inf du / (w - wj cosh u).
 *
 * For in-band w (w > wj) the simple pole sits at u0 = acosh(w/wj). Writing
 * f(w') = 1/sqrt(w'^2 - wj^2) and s0 = sqrt(w^2 - wj^2) = f(w)^-1, the PV
 * integral over [wj, W] splits into
 *
 *   int [f(w') - f(w)] / (w - w') dw'   (regular, integrated adaptively)
 *   + f(w) * log( (w - wj) / (W - w) )  (subtracted pole, closed form).
 *
 * In the u variable the regular integrand is
 *
 *   q(u) = [1 - wj sinh(u)/s0] / (w - wj cosh u),
 *
 * whose singularity at u0 is removable: by the hyperbolic half-angle
 * identities q(u) = coth((u + u0)/2) / s0 exactly. The quotient form
 * suffers catastrophic cancellation in a wide neighbourhood of u0 (and of
 * the band edge), so the coth form is what gets evaluated.
 *
 * The tail [W, inf) maps under t = 1/w' onto the bounded integral
 *
 *   int_0^{1/W} dt / [ (w t - 1) sqrt(1 - wj^2 t^2) ],
 *
 * smooth on the whole interval because W > 2|w| and W > wj.
 */
namespace {

struct TailSetup {
    double big_omega;  // split point W
    double u_split;    // acosh(W / wj)
};

double tail_integral(double omega, double wj, const TailSetup& ts,
                     const QuadConfig& cfg, QuadResult* out) {
    auto integrand = [omega, wj](double t) {
        return 1.0 / ((omega * t - 1.0) * std::sqrt(1.0 - wj * wj * t * t));
    };
    *out = integrate_gk15(integrand, 0.0, 1.0 / ts.big_omega, cfg);
    return out->value;
}

} // namespace

LambShiftResult lamb_shift_mode_info(const Mode& mode, double omega, double g,
                                     const QuadConfig& cfg) {
    if (!mode.coupled)
        throw std::invalid_argument("lamb_shift_mode: mode does not couple (even m or n)");
    const double wj = mode.cutoff;
    if (omega == wj)
        throw BandEdgeError("Lamb shift evaluation at the mode cutoff is singular");

    const double prefactor = 2.0 * g * g * wj * wj;
    LambShiftResult result;

    if (omega > wj) {
        const double u0 = std::acosh(omega / wj);
        const double s0 = std::sqrt((omega - wj) * (omega + wj));
        TailSetup ts{wj * std::cosh(u0 + 3.0), u0 + 3.0};

        auto regular = [u0, s0](double u) {
            return 1.0 / (std::tanh(0.5 * (u + u0)) * s0);
        };
        QuadResult reg = integrate_gk15(regular, 0.0, ts.u_split, cfg);
        const double pole_term =
            std::log((omega - wj) / (ts.big_omega - omega)) / s0;
        QuadResult tail;
        const double tail_val = tail_integral(omega, wj, ts, cfg, &tail);

        if (!reg.converged || !tail.converged)
            throw QuadratureError(
                "Lamb shift quadrature did not converge (achieved error " +
                    std::to_string(reg.error + tail.error) + ")",
                reg.error + tail.error);

        result.value = prefactor * (reg.value + pole_term + tail_val);
        result.error_estimate = prefactor * (reg.error + tail.error);
        result.intervals = reg.intervals + tail.intervals;
        return result;
    }

    // Below the cutoff (including omega <= 0) there is no pole. The
    // denominator is written as (omega - wj) - 2 wj sinh^2(u/2): both terms
    // are negative, so no cancellation as omega approaches the edge.
    const double u_split = 4.0;
    TailSetup ts{wj * std::cosh(u_split), u_split};
    const double edge_gap = omega - wj;
    auto integrand = [edge_gap, wj](double u) {
        const double sh = std::sinh(0.5 * u);
        return 1.0 / (edge_gap - 2.0 * wj * sh * sh);
    };
    QuadResult main = integrate_gk15(integrand, 0.0, ts.u_split, cfg);
    QuadResult tail;
    const double tail_val = tail_integral(omega, wj, ts, cfg, &tail);

    if (!main.converged || !tail.converged)
        throw QuadratureError(
            "Lamb shift quadrature did not converge (achieved error " +
                std::to_string(main.error + tail.error) + ")",
            main.error + tail.error);

    result.value = prefactor * (main.value + tail_val);
    result.error_estimate = prefactor * (main.error + tail.error);
    result.intervals = main.intervals + tail.intervals;
    return result;
}

double lamb_shift_mode(const Mode& mode, double omega, double g,
                       const QuadConfig& cfg) {
    return lamb_shift_mode_info(mode, omega, g, cfg).value;
}

std::vector<Mode> truncation_set(const WaveguideGeometry& geom, double omega,
                                 const TruncationPolicy& policy) {
    // ceiling = first coupled cutoff strictly above omega
    double bound = std::max(2.0 * std::abs(omega), 8.0 / geom.b);
    std::vector<Mode> all;
    for (;;) {
        all = enumerate_coupled_modes(geom, bound);
        if (!all.empty() && all.back().cutoff > omega) break;
        bound *= 2.0;
    }
    double ceiling = 0.0;
    for (const Mode& mode : all) {
        if (mode.cutoff == omega)
            throw BandEdgeError("self-energy requested exactly at the TM" +
                                std::to_string(mode.m) + std::to_string(mode.n) +
                                " cutoff");
        if (mode.cutoff > omega) {
            ceiling = mode.cutoff;
            break;
        }
    }

    const double limit = policy.max_cutoff_multiplier * ceiling;
    if (limit > all.back().cutoff) {
        double wide = bound;
        do {
            wide *= 2.0;
            all = enumerate_coupled_modes(geom, wide);
        } while (all.back().cutoff <= limit);
    }

    std::vector<Mode> set;
    for (const Mode& mode : all)
        if (mode.cutoff < omega || mode.cutoff < limit) set.push_back(mode);
    return set;
}

SelfEnergy self_energy_total(double omega, const WaveguideGeometry& geom,
                             double g, const TruncationPolicy& policy) {
    SelfEnergy se;
    const std::vector<Mode> set = truncation_set(geom, omega, policy);
    se.per_mode.reserve(set.size());
    se.lamb_shift_partial_sums.reserve(set.size());
    for (const Mode& mode : set) {
        ModeSelfEnergy entry;
        entry.channel = mode.channel;
        entry.m = mode.m;
        entry.n = mode.n;
        entry.cutoff = mode.cutoff;
        entry.decay = decay_rate_mode(mode, omega, g);
        entry.lamb_shift = lamb_shift_mode(mode, omega, g, policy.quad);
        se.decay += entry.decay;
        se.lamb_shift += entry.lamb_shift;
        se.per_mode.push_back(entry);
        se.lamb_shift_partial_sums.push_back(se.lamb_shift);
    }
    return se;
}

void SelfEnergyEvaluator::precompute(std::span<const double> omegas) {
    for (double omega : omegas)
        memo_.emplace(omega, self_energy_total(omega, geom_, g_, policy_));
}

SelfEnergy SelfEnergyEvaluator::evaluate(double omega) const {
    auto it = memo_.find(omega);
    if (it != memo_.end()) return it->second;
    return self_energy_total(omega, geom_, g_, policy_);
}

} // namespace waveqed
