#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "waveqed/analysis.hpp"

namespace waveqed {
namespace validation {

/// Brute-force Lamb shift: principal value in the original k variable with
/// a symmetric window (k_j - eps, k_j + eps) excluded and eps -> 0 taken by
/// Richardson extrapolation (the window error expands in odd powers of eps).
/// Below the cutoff there is no pole and the integral is evaluated directly.
/// Entirely independent of the production singularity-subtraction path,
/// including the underlying quadrature (adaptive Simpson here).
double lamb_shift_pv_oracle(const Mode& mode, double omega, double g);

/// Brute-force decay rate: the on-shell delta function regularized by a
/// Lorentzian of width eta on the k > 0 branch, extrapolated eta -> 0.
double decay_rate_delta_oracle(const Mode& mode, double omega, double g);

struct CheckResult {
    std::string name;
    bool pass = false;
    double worst = 0.0;    ///< worst observed deviation
    double threshold = 0.0;
    std::string detail;
};

struct SuiteOptions {
    std::uint64_t seed = 20250612;
    int unitarity_samples = 200;
    int closed_form_samples = 25;
    int pv_samples = 8;
    int table1_samples = 100;
    double pv_rel_tol = 1e-6;
    double quad_abs_tol = 1e-9;
    /// Test hook: feeds scatter() a self-energy with the decay sign flipped,
    /// which must break the unitarity check.
    bool flip_gamma_sign = false;
};

/// Release checks on the standard a = 1.5 geometry: unitarity of scatter(),
/// agreement of scatter() with the single-mode / coherent-superposition /
/// single-mode-state closed forms, Lamb-shift oracle agreement, and the
/// consistency of counted reflection peaks with the edge-sign prediction.
std::vector<CheckResult> run_suite(const SuiteOptions& opts);

bool all_passed(const std::vector<CheckResult>& results);

} // namespace validation
} // namespace waveqed
