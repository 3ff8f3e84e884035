#include "doctest.h"

#include <cmath>
#include <random>

#include "waveqed/analysis.hpp"

using namespace waveqed;

namespace {

SystemParams band_params(int j, double rabi, double detuning, double g) {
    SystemParams params;
    const Band band = band_by_index(params.geom, j);
    params.omega_e = 0.5 * (band.lo + band.hi);
    params.rabi = rabi;
    params.detuning = detuning;
    params.g = g;
    return params;
}

} // namespace

TEST_CASE("dressed states") {
    SUBCASE("symmetric drive") {
        SystemParams params = band_params(1, 0.7, 0.0, 0.1);
        const DressedStates d = dressed_states(params);
        CHECK(d.theta == doctest::Approx(0.25 * kPi).epsilon(1e-15));
        CHECK(d.nu_plus == doctest::Approx(params.omega_e + 0.7).epsilon(1e-15));
        CHECK(d.nu_minus == doctest::Approx(params.omega_e - 0.7).epsilon(1e-15));
        CHECK(d.nu_tilde_plus ==
              doctest::Approx(d.nu_plus + 0.5 * d.lamb_shift_at_omega_e).epsilon(1e-12));
    }
    SUBCASE("undriven limits") {
        SystemParams params = band_params(1, 0.0, 0.8, 0.1);
        const DressedStates d = dressed_states(params);
        // the e-like level stays at omega_e, the f-like level at omega_e - delta
        CHECK(d.nu_plus == doctest::Approx(params.omega_e).epsilon(1e-15));
        CHECK(d.nu_minus == doctest::Approx(params.omega_e - 0.8).epsilon(1e-15));
        CHECK(d.theta == doctest::Approx(0.5 * kPi).epsilon(1e-15));
        CHECK(d.nu_tilde_plus ==
              doctest::Approx(params.omega_e + d.lamb_shift_at_omega_e).epsilon(1e-12));
        CHECK(d.nu_tilde_minus == doctest::Approx(d.nu_minus).epsilon(1e-12));

        params.detuning = -0.8;
        const DressedStates dn = dressed_states(params);
        CHECK(dn.nu_plus == doctest::Approx(params.omega_e + 0.8).epsilon(1e-15));
        CHECK(dn.nu_minus == doctest::Approx(params.omega_e).epsilon(1e-15));
        CHECK(dn.theta == 0.0);
    }
    SUBCASE("explicit closed form") {
        SystemParams params = band_params(1, 1.0, 0.5, 0.1);
        params.omega_e = 5.4;
        const DressedStates d = dressed_states(params);
        // eigenvalues of [[omega_e, Omega], [Omega, omega_e - delta]]
        CHECK(d.nu_plus == doctest::Approx(6.1807764064044152).epsilon(1e-15));
        CHECK(d.nu_minus == doctest::Approx(4.1192235935955848).epsilon(1e-15));
        CHECK(std::tan(d.theta) ==
              doctest::Approx(2.0 / (std::sqrt(4.25) - 0.5)).epsilon(1e-14));
        CHECK(d.nu_plus + d.nu_minus ==
              doctest::Approx(2.0 * params.omega_e - params.detuning).epsilon(1e-14));
    }
}

TEST_CASE("transmission peak counting") {
    SystemParams params = band_params(1, 1.0, 0.0, 0.1);
    const Band band = band_by_index(params.geom, 1);

    params.detuning = params.omega_e - 0.5 * (band.lo + band.hi);
    CHECK(count_ctp(band, params) == 1);

    params.detuning = params.omega_e - (band.hi + 1.0);
    CHECK(count_ctp(band, params) == 0);

    params.detuning = params.omega_e - band.hi;  // lands exactly on the edge
    CHECK(count_ctp(band, params) == 0);
}

TEST_CASE("reflection peak finding in the single-mode band") {
    const Band band = band_by_index(WaveguideGeometry{}, 1);

    SUBCASE("drive regimes sweep out 1 / 2 / 1 / 0 peaks") {
        const int expected[4] = {1, 2, 1, 0};
        const double rabis[4] = {0.0, 1.0, 1.5, 2.0};
        for (int i = 0; i < 4; ++i) {
            SystemParams params = band_params(1, rabis[i], 0.5, 0.1);
            const PeakReport report =
                find_crp(band, CrpInputKind::SingleModeRegime, params);
            CHECK(report.crp_count() == expected[i]);
            for (double R : report.crp_reflectance) CHECK(R >= 1.0 - 1e-9);
            CHECK(report.ctp_count() == 1);  // delta = 0.5 is inside the window
            CHECK(report.ctp[0] == params.omega_e - params.detuning);
        }
    }
    SUBCASE("detuning outside the window with matching edge signs: no peak") {
        SystemParams params = band_params(1, 0.4, 5.0, 0.1);
        params.omega_e = 3.0;  // emitter and pole both below the band
        CHECK(count_ctp(band, params) == 0);
        SelfEnergyEvaluator se(params.geom, params.g, params.truncation);
        const PeakPrediction pred = predict_peaks(band, params, se);
        CHECK(pred.reG_lo > 0.0);
        CHECK(pred.reG_hi > 0.0);
        CHECK(pred.crp == 0);
        const PeakReport report =
            find_crp(band, CrpInputKind::SingleModeRegime, params);
        CHECK(report.crp_count() == 0);
    }
    SUBCASE("weak coupling: roots converge to the renormalized dressed levels") {
        double prev_dist = -1.0;
        for (double g : {0.005, 0.01, 0.02}) {
            SystemParams params = band_params(1, 1.0, 0.5, g);
            const DressedStates d = dressed_states(params);
            const PeakReport report =
                find_crp(band, CrpInputKind::SingleModeRegime, params);
            REQUIRE(report.crp_count() == 2);
            double dist = 0.0;
            for (double root : report.crp)
                dist = std::max(dist, std::min(std::abs(root - d.nu_tilde_plus),
                                               std::abs(root - d.nu_tilde_minus)));
            CHECK(dist < 0.05);
            if (prev_dist > 0.0) {
                const double ratio = dist / prev_dist;
                CHECK(ratio > 2.0);
                CHECK(ratio < 8.0);
            }
            prev_dist = dist;
        }
    }
    SUBCASE("wrong verification kind is rejected in multi-mode bands") {
        SystemParams params = band_params(2, 0.5, 0.0, 0.1);
        const Band two = band_by_index(params.geom, 2);
        CHECK_THROWS_AS(find_crp(two, CrpInputKind::SingleModeRegime, params),
                        std::domain_error);
    }
}

TEST_CASE("peak counts match the edge-sign prediction on random drives") {
    const Band band = band_by_index(WaveguideGeometry{}, 1);
    SystemParams params = band_params(1, 0.0, 0.0, 0.1);
    SelfEnergyEvaluator se(params.geom, params.g, params.truncation);
    se.precompute(crp_scan_grid(band));

    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        params.rabi = 2.0 * uni(rng);
        params.detuning = -2.0 + 4.0 * uni(rng);
        const PeakPrediction pred = predict_peaks(band, params, se);
        const PeakReport found =
            find_crp(band, CrpInputKind::SingleModeRegime, params, se);
        CHECK(pred.crp == found.crp_count());
        CHECK(pred.ctp == found.ctp_count());
        if (pred.pole_in_band)
            CHECK((found.crp_count() >= 0 && found.crp_count() <= 2));
        else
            CHECK(found.crp_count() <= 1);
    }
}

TEST_CASE("phase map") {
    SystemParams params = band_params(1, 0.0, 0.0, 0.1);
    const Band band = band_by_index(params.geom, 1);

    SUBCASE("cells agree with individual peak searches") {
        const std::vector<double> rabis = {0.0, 0.9, 1.8};
        const std::vector<double> detunings = {-1.8, 0.0, 0.5, 1.9};
        const PhaseMapResult map = phase_map(band, rabis, detunings, params);
        REQUIRE(map.cells.size() == rabis.size() * detunings.size());
        for (std::size_t i = 0; i < rabis.size(); ++i) {
            for (std::size_t j = 0; j < detunings.size(); ++j) {
                const PhaseMapCell& cell = map.cells[i * detunings.size() + j];
                CHECK(cell.rabi == rabis[i]);
                CHECK(cell.detuning == detunings[j]);
                SystemParams local = params;
                local.rabi = cell.rabi;
                local.detuning = cell.detuning;
                const PeakReport report =
                    find_crp(band, CrpInputKind::SingleModeRegime, local);
                CHECK(cell.crp == report.crp_count());
                CHECK(cell.ctp == count_ctp(band, local));
            }
        }
    }
    SUBCASE("undriven column never exceeds one reflection peak") {
        const PhaseMapResult map =
            phase_map(band, {0.0}, {-1.9, -1.0, -0.3, 0.0, 0.4, 1.1, 1.9}, params);
        for (const auto& cell : map.cells) {
            CHECK(cell.crp >= 0);
            CHECK(cell.crp <= 1);
        }
    }
    SUBCASE("strong drive empties the band of reflection peaks") {
        const PhaseMapResult map = phase_map(band, {3.0}, {0.5}, params);
        REQUIRE(map.cells.size() == 1);
        CHECK(map.cells[0].crp == 0);
        CHECK(map.cells[0].ctp == 1);
    }
    SUBCASE("transmission strip is exactly the detuning window") {
        const double lo_edge = params.omega_e - band.hi;
        const double hi_edge = params.omega_e - band.lo;
        const PhaseMapResult map = phase_map(
            band, {1.0},
            {lo_edge - 0.01, lo_edge + 0.01, 0.0, hi_edge - 0.01, hi_edge + 0.01},
            params);
        CHECK(map.cells[0].ctp == 0);
        CHECK(map.cells[1].ctp == 1);
        CHECK(map.cells[2].ctp == 1);
        CHECK(map.cells[3].ctp == 1);
        CHECK(map.cells[4].ctp == 0);
    }
    SUBCASE("deterministic with respect to threading") {
        const std::vector<double> rabis = {0.0, 0.7, 1.4};
        const std::vector<double> detunings = {-1.5, 0.2, 1.5};
        const PhaseMapResult serial = phase_map(band, rabis, detunings, params, 1);
        const PhaseMapResult parallel = phase_map(band, rabis, detunings, params, 4);
        REQUIRE(serial.cells.size() == parallel.cells.size());
        for (std::size_t i = 0; i < serial.cells.size(); ++i) {
            CHECK(serial.cells[i].ctp == parallel.cells[i].ctp);
            CHECK(serial.cells[i].crp == parallel.cells[i].crp);
        }
    }
}

TEST_CASE("omega grid generation") {
    SystemParams params = band_params(1, 0.5, 0.0, 0.1);
    const Band band = band_by_index(params.geom, 1);
    const std::vector<double> grid =
        make_omega_grid(band.lo, band.hi, 101, params);
    REQUIRE(grid.size() == 101);
    CHECK(grid.front() == band.lo + 1e-9);
    CHECK(grid.back() == band.hi - 1e-9);
    const auto modes = enumerate_coupled_modes(params.geom, 12.0);
    for (double x : grid) {
        for (const auto& mode : modes) CHECK(x != mode.cutoff);
        if (params.rabi > 0.0) CHECK(x != params.omega_e - params.detuning);
    }
}

TEST_CASE("spectrum sweeps") {
    SUBCASE("no transmission dip when the detuning leaves the window") {
        SystemParams params = band_params(1, 1.0, 2.0, 0.1);
        const Band band = band_by_index(params.geom, 1);
        CHECK(count_ctp(band, params) == 0);
        const auto grid = make_omega_grid(band.lo, band.hi, 201, params);
        const auto rows =
            spectrum(grid, InputSpec{InputKind::SingleMode, 1, {}}, params);
        double min_R = 1.0;
        for (const auto& row : rows) {
            REQUIRE(row.ok);
            min_R = std::min(min_R, row.R_total);
        }
        CHECK(min_R > 1e-3);
    }
    SUBCASE("coherent superposition carries the exact transmission point") {
        SystemParams params = band_params(2, 0.5, 0.0, 0.1);
        const Band band = band_by_index(params.geom, 2);
        // the pole itself: exact complete transmission via the symbolic branch
        const ScatteringResult at_pole = scatter(
            build_scss(params.omega_e - params.detuning, params), params);
        CHECK(at_pole.R_total == 0.0);

        const auto grid = make_omega_grid(band.lo, band.hi, 200, params);
        const auto rows = spectrum(grid, InputSpec{InputKind::Scss, 1, {}}, params);
        for (const auto& row : rows) {
            REQUIRE(row.ok);
            CHECK(row.R.size() == 2);
            CHECK(row.R_total + row.T_total == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("dark-state sweep is flat unit transmission") {
        SystemParams params = band_params(2, 0.5, 0.0, 0.1);
        const Band band = band_by_index(params.geom, 2);
        const auto grid = make_omega_grid(band.lo, band.hi, 120, params);
        const auto rows = spectrum(grid, InputSpec{InputKind::Dark, 1, {}}, params);
        for (const auto& row : rows) {
            REQUIRE(row.ok);
            CHECK(row.R_total <= 1e-12);
        }
    }
    SUBCASE("per-point failures are recorded, not fatal") {
        SystemParams params = band_params(1, 0.5, 0.0, 0.1);
        // dark state cannot exist with one channel: every row fails cleanly
        const auto rows = spectrum({5.0, 5.4}, InputSpec{InputKind::Dark, 1, {}}, params);
        REQUIRE(rows.size() == 2);
        for (const auto& row : rows) {
            CHECK_FALSE(row.ok);
            CHECK_FALSE(row.error.empty());
            CHECK(std::isnan(row.R_total));
        }
    }
    SUBCASE("threaded and serial sweeps agree bitwise") {
        SystemParams params = band_params(2, 0.5, 0.0, 0.1);
        const Band band = band_by_index(params.geom, 2);
        const auto grid = make_omega_grid(band.lo, band.hi, 64, params);
        const auto serial = spectrum(grid, InputSpec{InputKind::Scss, 1, {}}, params, 1);
        const auto parallel = spectrum(grid, InputSpec{InputKind::Scss, 1, {}}, params, 3);
        REQUIRE(serial.size() == parallel.size());
        for (std::size_t i = 0; i < serial.size(); ++i) {
            CHECK(serial[i].R_total == parallel[i].R_total);
            CHECK(serial[i].T_total == parallel[i].T_total);
        }
    }
}
