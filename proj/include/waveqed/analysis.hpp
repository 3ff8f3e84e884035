#pragma once

#include <optional>
#include <string>
#include <vector>

#include "waveqed/scattering.hpp"

namespace waveqed {

/// Dressed levels of the driven {e, f} subspace. nu_plus is the upper
/// eigenvalue; theta in (0, pi/2) is the mixing angle with sin(theta) the
/// e-state amplitude of |nu_plus>. The renormalized frequencies nu_tilde
/// add the Lamb shift weighted by each state's e-fraction; complete
/// reflection peaks sit at them in the weak-coupling limit.
struct DressedStates {
    double nu_plus = 0.0;
    double nu_minus = 0.0;
    double theta = 0.0;
    double nu_tilde_plus = 0.0;
    double nu_tilde_minus = 0.0;
    double lamb_shift_at_omega_e = 0.0;
};

DressedStates dressed_states(const SystemParams& params);

/// Detuning window for which the two-photon resonance omega_e - detuning
/// lies inside the band (the EIT window).
bool detuning_in_eit_window(const Band& band, const SystemParams& params);

/// Complete transmission / complete reflection peaks in one band.
struct PeakReport {
    Band band;
    std::vector<double> ctp;  ///< two-photon resonance, if strictly inside
    std::vector<double> crp;  ///< verified zeros of Re[G]
    std::vector<double> crp_reflectance;  ///< R at each CRP under the input kind
    std::string regime_label;

    int ctp_count() const { return static_cast<int>(ctp.size()); }
    int crp_count() const { return static_cast<int>(crp.size()); }
};

/// Input used to verify complete reflection at a Re[G] root: the coherent
/// superposition state, or the bare single-mode state which is equivalent
/// when only one channel propagates.
enum class CrpInputKind { Scss, SingleModeRegime };

struct CrpOptions {
    int scan_points = 2000;       ///< per monotone sub-interval
    double edge_offset = 1e-7;    ///< one-sided offset from the band edges
    double root_tol_scale = 1e-10; ///< |Re G| < scale * max(1, |omega_e|)
    double verify_tol = 1e-9;     ///< R >= 1 - verify_tol to accept a root
};

/// Uniform scan grid over the offset band interior; the grid shared by
/// find_crp segments, suitable for SelfEnergyEvaluator::precompute.
std::vector<double> crp_scan_grid(const Band& band, const CrpOptions& opts = {});

/// Locate all zeros of Re[G] strictly inside the band, splitting at the
/// drive-induced pole omega_e - detuning when it lies inside, and verify
/// each root scatters the stated input with R = 1.
PeakReport find_crp(const Band& band, CrpInputKind kind, const SystemParams& params,
                    const CrpOptions& opts = {});
PeakReport find_crp(const Band& band, CrpInputKind kind, const SystemParams& params,
                    const SelfEnergyEvaluator& se, const CrpOptions& opts = {});

/// 1 if the two-photon resonance omega_e - detuning lies strictly inside the
/// band, else 0.
int count_ctp(const Band& band, const SystemParams& params);

/// Sign-rule prediction of the peak counts from Re[G] at the band edges
/// (one-sided interior limits). With no drive pole inside the band, Re[G]
/// rises monotonically: one reflection peak iff the edge signs differ as
/// -,+. With the pole inside, each side of it contributes a root iff the
/// adjacent edge sign matches (-) on the left, (+) on the right.
struct PeakPrediction {
    int ctp = 0;
    int crp = 0;
    bool pole_in_band = false;
    double reG_lo = 0.0;
    double reG_hi = 0.0;
};

PeakPrediction predict_peaks(const Band& band, const SystemParams& params,
                             const SelfEnergyEvaluator& se,
                             double edge_offset = 1e-7);

/// Phase map of peak counts over the drive parameter plane.
struct PhaseMapCell {
    double rabi = 0.0;
    double detuning = 0.0;
    int ctp = -1;  ///< -1 marks a failed cell
    int crp = -1;
};

struct PhaseMapResult {
    std::vector<double> rabi_axis;
    std::vector<double> detuning_axis;
    std::vector<PhaseMapCell> cells;  ///< row-major, rabi outer, detuning inner
};

PhaseMapResult phase_map(const Band& band, const std::vector<double>& rabi_axis,
                         const std::vector<double>& detuning_axis,
                         const SystemParams& params, int threads = 1);

/// One spectral sample.
struct SpectrumRow {
    double omega = 0.0;
    double R_total = 0.0;
    double T_total = 0.0;
    double reG = 0.0;
    double imG = 0.0;
    std::vector<double> R;
    std::vector<double> T;
    bool ok = false;
    std::string error;
};

/// Scatter the selected input on every grid point; per-point failures are
/// recorded in the row and do not abort the sweep.
std::vector<SpectrumRow> spectrum(const std::vector<double>& omega_grid,
                                  const InputSpec& input, const SystemParams& params,
                                  int threads = 1);

/// Uniform grid on [lo, hi] with exact cutoffs, the band edges, and the
/// exact EIT pole nudged 1e-9 toward the band interior.
std::vector<double> make_omega_grid(double lo, double hi, int points,
                                    const SystemParams& params);

} // namespace waveqed
