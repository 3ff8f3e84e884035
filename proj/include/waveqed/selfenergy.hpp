#pragma once

#include <span>
#include <unordered_map>
#include <vector>

#include "waveqed/geometry.hpp"
#include "waveqed/quadrature.hpp"

namespace waveqed {

/// Which coupled modes enter the Lamb-shift sum. The per-mode shifts grow
/// roughly linearly with the cutoff, so the sum over all modes diverges and
/// must be truncated explicitly. Modes with cutoff < max_cutoff_multiplier
/// times the band ceiling (the next coupled cutoff above omega) are kept;
/// the default 1.0 keeps exactly the modes propagating in the analysis band.
/// Propagating modes are always included regardless of the multiplier.
struct TruncationPolicy {
    double max_cutoff_multiplier = 1.0;
    QuadConfig quad{};
};

struct ModeSelfEnergy {
    int channel = 0;
    int m = 0, n = 0;
    double cutoff = 0.0;
    double lamb_shift = 0.0;  ///< Delta_j(omega)
    double decay = 0.0;       ///< Gamma_j(omega)
};

struct SelfEnergy {
    double lamb_shift = 0.0;  ///< Delta(omega) over the truncation set
    double decay = 0.0;       ///< Gamma(omega), propagating modes only
    std::vector<ModeSelfEnergy> per_mode;              ///< truncation set, cutoff order
    std::vector<double> lamb_shift_partial_sums;       ///< convergence report
};

/// Gamma_j(omega) = 2 pi g^2 cutoff^2 / sqrt(omega^2 - cutoff^2) above the
/// cutoff, 0 below; BandEdgeError exactly at the cutoff.
double decay_rate_mode(const Mode& mode, double omega, double g);

struct LambShiftResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int intervals = 0;
};

/// Delta_j(omega): Cauchy principal value of
///   integral dk |g_{j,k}|^2 / (omega - omega_{j,k})
/// over the full k line, evaluated by singularity subtraction (see the
/// implementation for the decomposition). Valid for any omega != cutoff,
/// including omega <= 0; QuadratureError on non-convergence.
LambShiftResult lamb_shift_mode_info(const Mode& mode, double omega, double g,
                                     const QuadConfig& cfg = {});
double lamb_shift_mode(const Mode& mode, double omega, double g,
                       const QuadConfig& cfg = {});

/// Modes entering the Delta(omega) sum under `policy`: every coupled mode
/// with cutoff < multiplier * ceiling, where ceiling is the first coupled
/// cutoff strictly above omega. Throws BandEdgeError at cutoffs.
std::vector<Mode> truncation_set(const WaveguideGeometry& geom, double omega,
                                 const TruncationPolicy& policy);

/// Total self-energy at omega: sums the per-mode decay rates and Lamb shifts
/// over the truncation set and records the partial sums of Delta.
SelfEnergy self_energy_total(double omega, const WaveguideGeometry& geom,
                             double g, const TruncationPolicy& policy);

/// Memoizing wrapper around self_energy_total for sweeps. precompute() fills
/// the table; afterwards the evaluator is read-only and safe to share across
/// threads (misses are computed on the fly without touching the table).
class SelfEnergyEvaluator {
public:
    SelfEnergyEvaluator(const WaveguideGeometry& geom, double g,
                        const TruncationPolicy& policy)
        : geom_(geom), g_(g), policy_(policy) {}

    void precompute(std::span<const double> omegas);

    SelfEnergy evaluate(double omega) const;
    double lamb_shift(double omega) const { return evaluate(omega).lamb_shift; }

    const WaveguideGeometry& geometry() const { return geom_; }
    double coupling_scale() const { return g_; }
    const TruncationPolicy& policy() const { return policy_; }

private:
    WaveguideGeometry geom_;
    double g_;
    TruncationPolicy policy_;
    std::unordered_map<double, SelfEnergy> memo_;
};

} // namespace waveqed
