#include "waveqed/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "waveqed/parallel.hpp"

namespace waveqed {

DressedStates dressed_states(const SystemParams& params) {
    params.validate();
    DressedStates d;
    const double omega_e = params.omega_e;
    const double rabi = params.rabi;
    const double delta = params.detuning;
    const double splitting = std::sqrt(4.0 * rabi * rabi + delta * delta);

    // Eigenvalues of the driven {e, f} block: the e level sits at omega_e,
    // the drive-shifted f level at omega_e - delta.
    d.nu_plus = omega_e + 0.5 * (-delta + splitting);
    d.nu_minus = omega_e + 0.5 * (-delta - splitting);

    if (rabi > 0.0) {
        d.theta = std::atan2(2.0 * rabi, splitting - delta);
    } else if (delta > 0.0) {
        d.theta = 0.5 * kPi;  // |nu_plus> -> |e>
    } else if (delta < 0.0) {
        d.theta = 0.0;        // |nu_plus> -> |f>
    } else {
        d.theta = 0.25 * kPi; // degenerate levels
    }

    d.lamb_shift_at_omega_e =
        self_energy_total(omega_e, params.geom, params.g, params.truncation)
            .lamb_shift;
    const double sin2 = std::sin(d.theta) * std::sin(d.theta);
    const double cos2 = 1.0 - sin2;
    d.nu_tilde_plus = d.nu_plus + sin2 * d.lamb_shift_at_omega_e;
    d.nu_tilde_minus = d.nu_minus + cos2 * d.lamb_shift_at_omega_e;
    return d;
}

bool detuning_in_eit_window(const Band& band, const SystemParams& params) {
    const double pole = params.omega_e - params.detuning;
    return band.lo < pole && pole < band.hi;
}

int count_ctp(const Band& band, const SystemParams& params) {
    return detuning_in_eit_window(band, params) ? 1 : 0;
}

namespace {

void check_band(const Band& band) {
    if (band.j_max < 1)
        throw std::domain_error("band has no propagating coupled channel");
    if (!(band.lo < band.hi))
        throw std::domain_error("empty band interval");
}

double re_g(double omega, const SystemParams& params,
            const SelfEnergyEvaluator& se) {
    double value = omega - params.omega_e - se.lamb_shift(omega);
    if (params.rabi > 0.0)
        value -= params.rabi * params.rabi /
                 (omega - params.omega_e + params.detuning);
    return value;
}

struct Segment {
    double a = 0.0, b = 0.0;
    bool pole_at_a = false;  // Re[G] -> -inf as omega -> a+
    bool pole_at_b = false;  // Re[G] -> +inf as omega -> b-
};

// Sample points of one segment: the shared band grid restricted to it, plus
// a geometric approach toward any pole end, where Re[G] varies on every
// scale and a fixed-pitch scan would miss roots.
std::vector<double> segment_points(const Segment& seg,
                                   const std::vector<double>& band_grid) {
    std::vector<double> pts;
    pts.reserve(band_grid.size() + 96);
    for (double x : band_grid)
        if ((x > seg.a || (x == seg.a && !seg.pole_at_a)) &&
            (x < seg.b || (x == seg.b && !seg.pole_at_b)))
            pts.push_back(x);

    const double len = seg.b - seg.a;
    const double pitch = len / static_cast<double>(band_grid.size());
    const double tiny =
        1e-12 * std::max(1.0, std::max(std::abs(seg.a), std::abs(seg.b)));
    if (seg.pole_at_a)
        for (double d = pitch; d > tiny; d *= 0.5) pts.push_back(seg.a + d);
    if (seg.pole_at_b)
        for (double d = pitch; d > tiny; d *= 0.5) pts.push_back(seg.b - d);

    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

double bisect_re_g(double a, double b, double fa, const SystemParams& params,
                   const SelfEnergyEvaluator& se, double tol) {
    const bool negative_left = fa < 0.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        if (mid == a || mid == b) return mid;
        const double fm = re_g(mid, params, se);
        if (std::abs(fm) < tol) return mid;
        if ((fm < 0.0) == negative_left)
            a = mid;
        else
            b = mid;
    }
    return 0.5 * (a + b);
}

} // namespace

PeakPrediction predict_peaks(const Band& band, const SystemParams& params,
                             const SelfEnergyEvaluator& se, double edge_offset) {
    check_band(band);
    PeakPrediction pred;
    pred.ctp = count_ctp(band, params);

    const double lo = band.lo + edge_offset;
    const double hi = band.hi - edge_offset;
    pred.reG_lo = re_g(lo, params, se);
    pred.reG_hi = re_g(hi, params, se);

    const double pole = params.omega_e - params.detuning;
    pred.pole_in_band = params.rabi > 0.0 && lo < pole && pole < hi;

    if (pred.pole_in_band) {
        // Re[G] climbs to +inf left of the pole and from -inf right of it
        pred.crp = (pred.reG_lo < 0.0 ? 1 : 0) + (pred.reG_hi > 0.0 ? 1 : 0);
    } else {
        pred.crp = (pred.reG_lo < 0.0 && pred.reG_hi > 0.0) ? 1 : 0;
    }
    return pred;
}

std::vector<double> crp_scan_grid(const Band& band, const CrpOptions& opts) {
    // Shared by every find_crp segment (and every phase-map cell) so that a
    // precomputed self-energy table hits.
    std::vector<double> pts;
    pts.reserve(static_cast<std::size_t>(opts.scan_points));
    const double lo = band.lo + opts.edge_offset;
    const double hi = band.hi - opts.edge_offset;
    for (int i = 0; i < opts.scan_points; ++i)
        pts.push_back(lo + (hi - lo) * static_cast<double>(i) /
                               static_cast<double>(opts.scan_points - 1));
    return pts;
}

PeakReport find_crp(const Band& band, CrpInputKind kind, const SystemParams& params,
                    const CrpOptions& opts) {
    SelfEnergyEvaluator se(params.geom, params.g, params.truncation);
    return find_crp(band, kind, params, se, opts);
}

PeakReport find_crp(const Band& band, CrpInputKind kind, const SystemParams& params,
                    const SelfEnergyEvaluator& se, const CrpOptions& opts) {
    check_band(band);
    params.validate();
    if (kind == CrpInputKind::SingleModeRegime && band.j_max != 1)
        throw std::domain_error(
            "single-mode-regime verification requires a one-channel band");

    PeakReport report;
    report.band = band;
    if (count_ctp(band, params) == 1)
        report.ctp.push_back(params.omega_e - params.detuning);

    const double lo = band.lo + opts.edge_offset;
    const double hi = band.hi - opts.edge_offset;
    const double pole = params.omega_e - params.detuning;
    const bool split = params.rabi > 0.0 && lo < pole && pole < hi;

    std::vector<Segment> segments;
    if (split) {
        segments.push_back({lo, pole, false, true});
        segments.push_back({pole, hi, true, false});
    } else {
        segments.push_back({lo, hi, false, false});
    }

    const double tol = opts.root_tol_scale * std::max(1.0, std::abs(params.omega_e));
    const std::vector<double> band_grid = crp_scan_grid(band, opts);
    std::vector<double> roots;
    for (const Segment& seg : segments) {
        const std::vector<double> pts = segment_points(seg, band_grid);
        double prev_x = 0.0, prev_f = 0.0;
        bool have_prev = false;
        for (double x : pts) {
            const double f = re_g(x, params, se);
            if (f == 0.0) {
                roots.push_back(x);
                have_prev = false;
                continue;
            }
            if (have_prev && std::signbit(f) != std::signbit(prev_f))
                roots.push_back(bisect_re_g(prev_x, x, prev_f, params, se, tol));
            prev_x = x;
            prev_f = f;
            have_prev = true;
        }
    }
    std::sort(roots.begin(), roots.end());

    for (double root : roots) {
        const InputState input = kind == CrpInputKind::Scss
                                     ? build_scss(root, params)
                                     : build_single_mode(root, 1, params);
        const ScatteringResult res = scatter(input, params);
        if (res.R_total >= 1.0 - opts.verify_tol) {
            report.crp.push_back(root);
            report.crp_reflectance.push_back(res.R_total);
        }
    }

    const bool in_window = detuning_in_eit_window(band, params);
    report.regime_label = std::string(in_window ? "within" : "outside") +
                          "-eit-window/" + std::to_string(report.crp_count()) +
                          "-crp";
    return report;
}

PhaseMapResult phase_map(const Band& band, const std::vector<double>& rabi_axis,
                         const std::vector<double>& detuning_axis,
                         const SystemParams& params, int threads) {
    check_band(band);
    if (rabi_axis.empty() || detuning_axis.empty())
        throw ConfigError("phase map axes must be non-empty");

    PhaseMapResult result;
    result.rabi_axis = rabi_axis;
    result.detuning_axis = detuning_axis;
    result.cells.resize(rabi_axis.size() * detuning_axis.size());

    // The self-energy is drive-independent: precompute it on the scan grid
    // once and share the frozen table across all cells and threads.
    SelfEnergyEvaluator se(params.geom, params.g, params.truncation);
    se.precompute(crp_scan_grid(band, CrpOptions{}));

    const CrpInputKind kind =
        band.j_max == 1 ? CrpInputKind::SingleModeRegime : CrpInputKind::Scss;

    parallel_for(result.cells.size(), threads, [&](std::size_t idx) {
        const std::size_t i = idx / detuning_axis.size();
        const std::size_t j = idx % detuning_axis.size();
        PhaseMapCell& cell = result.cells[idx];
        cell.rabi = rabi_axis[i];
        cell.detuning = detuning_axis[j];
        SystemParams local = params;
        local.rabi = cell.rabi;
        local.detuning = cell.detuning;
        try {
            const PeakReport report = find_crp(band, kind, local, se);
            cell.ctp = report.ctp_count();
            cell.crp = report.crp_count();
        } catch (const std::exception&) {
            cell.ctp = -1;
            cell.crp = -1;
        }
    });
    return result;
}

std::vector<double> make_omega_grid(double lo, double hi, int points,
                                    const SystemParams& params) {
    if (points < 1) throw ConfigError("grid needs at least one point");
    if (!(lo <= hi)) throw ConfigError("omega grid range is empty");

    const std::vector<Mode> modes =
        enumerate_coupled_modes(params.geom, hi * 1.5 + 1.0);
    const double pole = params.omega_e - params.detuning;
    const double nudge = 1e-9;

    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        double x = points == 1
                       ? lo
                       : lo + (hi - lo) * static_cast<double>(i) /
                                 static_cast<double>(points - 1);
        for (const Mode& mode : modes) {
            if (x == mode.cutoff) {
                // push toward the interior of whichever band the grid samples
                x += (x >= hi) ? -nudge : nudge;
                break;
            }
        }
        if (params.rabi > 0.0 && x == pole) x += (x >= hi) ? -nudge : nudge;
        grid.push_back(x);
    }
    return grid;
}

std::vector<SpectrumRow> spectrum(const std::vector<double>& omega_grid,
                                  const InputSpec& input, const SystemParams& params,
                                  int threads) {
    params.validate();
    std::vector<SpectrumRow> rows(omega_grid.size());

    SelfEnergyEvaluator se(params.geom, params.g, params.truncation);
    se.precompute(omega_grid);

    parallel_for(omega_grid.size(), threads, [&](std::size_t i) {
        SpectrumRow& row = rows[i];
        row.omega = omega_grid[i];
        try {
            const SelfEnergy energy = se.evaluate(row.omega);
            const InputState state = build_input(input, row.omega, params);
            const ScatteringResult res = scatter(state, params, energy);
            row.R_total = res.R_total;
            row.T_total = res.T_total;
            if (res.G.eit_pole) {
                row.reG = std::numeric_limits<double>::infinity();
                row.imG = std::numeric_limits<double>::infinity();
            } else {
                row.reG = res.G.value.real();
                row.imG = res.G.value.imag();
            }
            row.R = res.R_per_mode;
            row.T = res.T_per_mode;
            row.ok = true;
        } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
            row.R_total = row.T_total = row.reG = row.imG =
                std::numeric_limits<double>::quiet_NaN();
        }
    });
    return rows;
}

} // namespace waveqed
