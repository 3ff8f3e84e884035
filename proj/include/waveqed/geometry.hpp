#pragma once

#include <complex>
#include <vector>

#include "waveqed/errors.hpp"

namespace waveqed {

inline constexpr double kPi = 3.14159265358979323846;

/// Rectangular waveguide cross-section with an emitter on the transverse
/// center line. Lengths are in units of the short side b, frequencies in
/// units of c/b, so b is fixed to 1 and only the aspect ratio a matters.
struct WaveguideGeometry {
    double a = 1.5;   ///< transverse width (units of b)
    double b = 1.0;   ///< transverse height, the normalization length
    double z0 = 0.0;  ///< emitter longitudinal position (units of b)

    // The emitter sits at (a/2, b/2, z0); only odd/odd TM modes couple there.

    void validate() const;
};

/// One TM_{mn} channel. `channel` is the 1-based index j among coupled
/// (odd m, odd n) modes ordered by cutoff; 0 for uncoupled modes.
struct Mode {
    int m = 1;
    int n = 1;
    double cutoff = 0.0;
    bool coupled = true;
    int channel = 0;
};

/// TM_{mn} cutoff: pi * sqrt(m^2/a^2 + n^2/b^2).
double cutoff_frequency(int m, int n, const WaveguideGeometry& geom);

/// Build the Mode record for given indices (computes cutoff and parity).
Mode make_mode(int m, int n, const WaveguideGeometry& geom);

/// All coupled (odd m, odd n) modes with cutoff <= omega_max, sorted by
/// increasing cutoff, ties broken by (m, n); channel indices assigned 1..N.
/// Empty if omega_max is below the TM11 cutoff.
std::vector<Mode> enumerate_coupled_modes(const WaveguideGeometry& geom,
                                          double omega_max);

/// omega_{j,k} = sqrt(cutoff^2 + k^2).
double dispersion(const Mode& mode, double k);

/// k_j(omega) = sqrt(omega^2 - cutoff^2); domain error below cutoff.
double longitudinal_wavenumber(const Mode& mode, double omega);

/// rho_j(omega) = omega / sqrt(omega^2 - cutoff^2) above cutoff (inverse
/// group velocity), 0 below. Throws BandEdgeError exactly at the cutoff.
double density_of_states(const Mode& mode, double omega);

/// sin(m pi/2) sin(n pi/2): +/-1 for odd/odd modes, exactly 0 otherwise.
double coupling_parity(const Mode& mode);

/// g_{j,k} = -g * cutoff * sin(m pi/2) sin(n pi/2) * exp(-i k z0) / sqrt(omega_{j,k}).
/// Identically zero for modes with even m or n.
std::complex<double> coupling_strength(const Mode& mode, double k, double g,
                                       const WaveguideGeometry& geom);

/// Frequency band between consecutive coupled cutoffs. j_max propagating
/// coupled channels exist for lo < omega < hi. j_max = 0 denotes the band
/// below the first cutoff (lo = 0).
struct Band {
    int j_max = 0;
    double lo = 0.0;
    double hi = 0.0;
};

/// Band containing omega. Throws BandEdgeError if omega equals a coupled
/// cutoff, domain error if omega <= 0.
Band band_for(const WaveguideGeometry& geom, double omega);

/// Band with exactly j_max propagating channels (j_max >= 1).
Band band_by_index(const WaveguideGeometry& geom, int j_max);

/// Coupled modes propagating at omega (cutoff < omega), channel-ordered.
std::vector<Mode> propagating_modes(const WaveguideGeometry& geom, double omega);

} // namespace waveqed
