#include "waveqed/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace waveqed {

void WaveguideGeometry::validate() const {
    if (!(a > 0.0) || !(b > 0.0))
        throw ConfigError("waveguide cross-section must have a > 0 and b > 0");
    if (!std::isfinite(z0))
        throw ConfigError("emitter position z0 must be finite");
}

double cutoff_frequency(int m, int n, const WaveguideGeometry& geom) {
    if (m < 1 || n < 1)
        throw std::domain_error("TM mode indices must satisfy m >= 1, n >= 1");
    const double mx = static_cast<double>(m) / geom.a;
    const double ny = static_cast<double>(n) / geom.b;
    return kPi * std::sqrt(mx * mx + ny * ny);
}

Mode make_mode(int m, int n, const WaveguideGeometry& geom) {
    Mode mode;
    mode.m = m;
    mode.n = n;
    mode.cutoff = cutoff_frequency(m, n, geom);
    mode.coupled = (m % 2 == 1) && (n % 2 == 1);
    mode.channel = 0;
    return mode;
}

std::vector<Mode> enumerate_coupled_modes(const WaveguideGeometry& geom,
                                          double omega_max) {
    geom.validate();
    std::vector<Mode> modes;
    if (!(omega_max > 0.0)) return modes;

    const int m_max = static_cast<int>(std::floor(omega_max * geom.a / kPi)) + 1;
    const int n_max = static_cast<int>(std::floor(omega_max * geom.b / kPi)) + 1;
    for (int m = 1; m <= m_max; m += 2) {
        for (int n = 1; n <= n_max; n += 2) {
            Mode mode = make_mode(m, n, geom);
            if (mode.cutoff <= omega_max) modes.push_back(mode);
        }
    }
    std::sort(modes.begin(), modes.end(), [](const Mode& x, const Mode& y) {
        return std::tie(x.cutoff, x.m, x.n) < std::tie(y.cutoff, y.m, y.n);
    });
    for (std::size_t i = 0; i < modes.size(); ++i)
        modes[i].channel = static_cast<int>(i) + 1;
    return modes;
}

double dispersion(const Mode& mode, double k) {
    return std::sqrt(mode.cutoff * mode.cutoff + k * k);
}

double longitudinal_wavenumber(const Mode& mode, double omega) {
    if (omega < mode.cutoff)
        throw std::domain_error("longitudinal wavenumber undefined below cutoff");
    // factored form keeps precision near the cutoff
    return std::sqrt((omega - mode.cutoff) * (omega + mode.cutoff));
}

double density_of_states(const Mode& mode, double omega) {
    if (omega == mode.cutoff)
        throw BandEdgeError("density of states diverges at the mode cutoff");
    if (omega < mode.cutoff) return 0.0;
    return omega / std::sqrt((omega - mode.cutoff) * (omega + mode.cutoff));
}

double coupling_parity(const Mode& mode) {
    if (mode.m % 2 == 0 || mode.n % 2 == 0) return 0.0;
    const int sm = ((mode.m - 1) / 2) % 2 == 0 ? 1 : -1;
    const int sn = ((mode.n - 1) / 2) % 2 == 0 ? 1 : -1;
    return static_cast<double>(sm * sn);
}

std::complex<double> coupling_strength(const Mode& mode, double k, double g,
                                       const WaveguideGeometry& geom) {
    const double parity = coupling_parity(mode);
    if (parity == 0.0) return {0.0, 0.0};
    const double amp = -g * mode.cutoff * parity / std::sqrt(dispersion(mode, k));
    return amp * std::exp(std::complex<double>(0.0, -k * geom.z0));
}

namespace {

// Coupled cutoffs up to at least `omega`, plus one beyond it.
std::vector<Mode> modes_past(const WaveguideGeometry& geom, double omega) {
    double bound = std::max(2.0 * omega, 8.0 / geom.b);
    for (;;) {
        std::vector<Mode> modes = enumerate_coupled_modes(geom, bound);
        if (!modes.empty() && modes.back().cutoff > omega) return modes;
        bound *= 2.0;
    }
}

} // namespace

Band band_for(const WaveguideGeometry& geom, double omega) {
    if (!(omega > 0.0))
        throw std::domain_error("band_for requires omega > 0");
    const std::vector<Mode> modes = modes_past(geom, omega);
    Band band;
    band.lo = 0.0;
    for (const Mode& mode : modes) {
        if (mode.cutoff == omega)
            throw BandEdgeError("omega coincides with the TM" +
                                std::to_string(mode.m) + std::to_string(mode.n) +
                                " cutoff");
        if (mode.cutoff < omega) {
            band.j_max = mode.channel;
            band.lo = mode.cutoff;
        } else {
            band.hi = mode.cutoff;
            break;
        }
    }
    return band;
}

Band band_by_index(const WaveguideGeometry& geom, int j_max) {
    if (j_max < 1)
        throw std::domain_error("band index must be >= 1");
    double bound = 8.0 / geom.b;
    for (;;) {
        std::vector<Mode> modes = enumerate_coupled_modes(geom, bound);
        if (static_cast<int>(modes.size()) >= j_max + 1) {
            Band band;
            band.j_max = j_max;
            band.lo = modes[static_cast<std::size_t>(j_max) - 1].cutoff;
            band.hi = modes[static_cast<std::size_t>(j_max)].cutoff;
            return band;
        }
        bound *= 2.0;
    }
}

std::vector<Mode> propagating_modes(const WaveguideGeometry& geom, double omega) {
    const Band band = band_for(geom, omega);
    std::vector<Mode> modes = enumerate_coupled_modes(geom, omega);
    (void)band; // band_for already rejected exact-cutoff omega
    return modes;
}

} // namespace waveqed
