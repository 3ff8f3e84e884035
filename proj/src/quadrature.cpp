#include "waveqed/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace waveqed {

namespace {

// Kronrod-15 abscissas on [0, 1] side of the symmetric rule; even entries
// (0, 2, ...) are Kronrod-only nodes, odd entries are the embedded Gauss-7.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Segment {
    double a, b;
    double integral;
    double error;
};

Segment evaluate_gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    double fv[15];
    fv[7] = f(c);
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }

    double kronrod = kWgk[7] * fv[7];
    double gauss = kWg[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        const double pair = fv[i] + fv[14 - i];
        kronrod += kWgk[i] * pair;
        if (i % 2 == 1) gauss += kWg[i / 2] * pair;
    }
    kronrod *= h;
    gauss *= h;

    // QUADPACK-style rescaled error estimate
    const double mean = kronrod / (b - a);
    double resasc = kWgk[7] * std::abs(fv[7] - mean);
    for (int i = 0; i < 7; ++i)
        resasc += kWgk[i] * (std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean));
    resasc *= std::abs(h);

    double err = std::abs(kronrod - gauss);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));

    return Segment{a, b, kronrod, err};
}

} // namespace

QuadResult integrate_gk15(const std::function<double(double)>& f, double a,
                          double b, const QuadConfig& cfg) {
    QuadResult res;
    if (a == b) {
        res.converged = true;
        return res;
    }

    std::vector<Segment> segs;
    segs.push_back(evaluate_gk15(f, a, b));

    for (;;) {
        double total = 0.0, err = 0.0;
        for (const Segment& s : segs) {
            total += s.integral;
            err += s.error;
        }
        res.value = total;
        res.error = err;
        res.intervals = static_cast<int>(segs.size());
        if (err <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) {
            res.converged = true;
            return res;
        }
        if (static_cast<int>(segs.size()) >= cfg.max_intervals) {
            res.converged = false;
            return res;
        }

        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].error > segs[worst].error) worst = i;

        const Segment split = segs[worst];
        const double mid = 0.5 * (split.a + split.b);
        if (mid == split.a || mid == split.b) {
            // interval no longer representable; stop refining it
            segs[worst].error = 0.0;
            continue;
        }
        segs[worst] = evaluate_gk15(f, split.a, mid);
        segs.push_back(evaluate_gk15(f, mid, split.b));
    }
}

} // namespace waveqed
