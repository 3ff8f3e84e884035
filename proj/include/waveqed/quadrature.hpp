#pragma once

#include <functional>

namespace waveqed {

struct QuadConfig {
    double abs_tol = 1e-9;
    double rel_tol = 1e-12;
    int max_intervals = 4000;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;   ///< estimated absolute error
    int intervals = 0;
    bool converged = false;
};

/// Globally adaptive Gauss-Kronrod 7/15 quadrature on [a, b]. The worst
/// interval is split until the summed error estimate drops below
/// max(abs_tol, rel_tol * |integral|) or max_intervals is reached.
QuadResult integrate_gk15(const std::function<double(double)>& f, double a,
                          double b, const QuadConfig& cfg = {});

} // namespace waveqed
