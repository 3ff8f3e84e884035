#pragma once

#include <complex>
#include <vector>

#include "waveqed/geometry.hpp"
#include "waveqed/selfenergy.hpp"

namespace waveqed {

/// Full parameter set of the driven Lambda emitter in the waveguide. The
/// ground-state energy is the zero of frequency; the intermediate level
/// enters only through the drive detuning.
struct SystemParams {
    double omega_e = 0.0;   ///< emitter transition frequency (c/b units)
    double rabi = 0.0;      ///< drive Rabi frequency Omega >= 0
    double detuning = 0.0;  ///< drive detuning delta
    double g = 0.1;         ///< coupling scale > 0
    WaveguideGeometry geom{};
    TruncationPolicy truncation{};

    void validate() const;
};

/// Denominator function G(omega) of the scattering amplitudes. At the
/// two-photon resonance omega = omega_e - detuning (for rabi > 0) the drive
/// term diverges; that point is flagged symbolically instead of producing a
/// huge float, so downstream scattering is exactly transparent there.
struct Resolvent {
    std::complex<double> value{0.0, 0.0};
    bool eit_pole = false;
};

Resolvent resolvent(double omega, const SystemParams& params);
Resolvent resolvent(double omega, const SystemParams& params, const SelfEnergy& se);

/// Single photon at `omega` distributed over the propagating coupled
/// channels with normalized complex coefficients.
struct InputState {
    double omega = 0.0;
    std::vector<std::complex<double>> coeffs;

    int j_max() const { return static_cast<int>(coeffs.size()); }
};

struct ScatteringResult {
    std::vector<std::complex<double>> r;  ///< reflection amplitudes r_j
    std::vector<std::complex<double>> t;  ///< transmission amplitudes t_j
    std::vector<double> R_per_mode;
    std::vector<double> T_per_mode;
    double R_total = 0.0;
    double T_total = 0.0;
    Resolvent G;
    std::complex<double> alpha{0.0, 0.0};  ///< emitter excitation amplitude
};

/// Scatter an arbitrary normalized input superposition. Group-velocity
/// weighted per-mode reflectances/transmittances sum to R_total + T_total = 1.
/// Rejects unnormalized inputs and omega at a cutoff (use cutoff_limit).
ScatteringResult scatter(const InputState& input, const SystemParams& params);
ScatteringResult scatter(const InputState& input, const SystemParams& params,
                         const SelfEnergy& se);

/// Coherent superposition c_j proportional to rho_j(omega) * conj(g_{j,k_j});
/// the unique multi-mode input reaching complete reflection at a Fano
/// resonance.
InputState build_scss(double omega, const SystemParams& params);

/// c_j = delta_{nj} for channel n (1-based); n must be propagating at omega.
InputState build_single_mode(double omega, int channel, const SystemParams& params);

/// Canonical dark state: support on channels 1 and 2 with
/// c = (g_{2,k_2}, -g_{1,k_1}, 0, ...) normalized, so sum_j c_j g_{j,k_j} = 0
/// exactly. Requires at least two propagating channels.
InputState build_dark_state(double omega, const SystemParams& params);

/// c_j = 1/sqrt(j_max) on every propagating channel.
InputState build_equal_superposition(double omega, const SystemParams& params);

/// Normalize a user-supplied coefficient vector; rejects zero vectors and
/// size mismatches with the propagating channel count at omega.
InputState make_custom_input(double omega, std::vector<std::complex<double>> coeffs,
                             const SystemParams& params);

/// alpha = sum_j c_j g_{j,k_j} / G(omega); exactly 0 at the EIT pole.
std::complex<double> emitter_amplitude(const InputState& input,
                                       const SystemParams& params);

/// One-sided scattering limits at a coupled-mode cutoff, where direct
/// evaluation is rejected. Approaching from above, the opening channel's
/// density of states diverges and the limits follow from the closed forms:
/// the opening-channel single-mode state and the coherent superposition
/// reflect completely, every other input transmits completely. From below
/// the result is the continuous limit inside the lower band.
struct CutoffLimitResult {
    double R_total = 0.0;
    double T_total = 0.0;
};

enum class CutoffSide { FromAbove, FromBelow };

enum class InputKind { Scss, SingleMode, Dark, Equal, Custom };

/// Input selector used by sweeps and the CLI.
struct InputSpec {
    InputKind kind = InputKind::Scss;
    int sms_channel = 1;  ///< for InputKind::SingleMode
    std::vector<std::complex<double>> custom;
};

InputState build_input(const InputSpec& spec, double omega,
                       const SystemParams& params);

CutoffLimitResult cutoff_limit(double omega_cutoff, CutoffSide side,
                               const InputSpec& spec, const SystemParams& params);

} // namespace waveqed
