#pragma once
// Fractal dimension by the structure-function method: the mean squared
// height difference S(tau) over isotropic lag offsets grows as tau^(2H) on
// a self-affine surface, and Sfd = 3 - H = 3 - slope/2. The fit runs over
// the decade of lags above the sampling step.

#include <cmath>
#include <cstddef>
#include <vector>

#include "heightmap.hpp"

namespace gearlab::areal {

struct FractalFit {
    double Sfd = 2.0;
    double slope = 0.0;       // d log10 S / d log10 tau
    double r0_um = 0.0, r1_um = 0.0;
    std::size_t n_lags = 0;
};

inline FractalFit fractal_dimension(const Heightmap& m) {
    m.validate();
    if (m.nx < 64 || m.ny < 64)
        throw InsufficientData("fractal_dimension: need at least 64x64 samples");
    const double r0 = std::min(m.dx_um, m.dy_um);
    const double r1 = 10.0 * r0;
    const std::ptrdiff_t dmax_x = std::ptrdiff_t(std::floor(r1 / m.dx_um));
    const std::ptrdiff_t dmax_y = std::ptrdiff_t(std::floor(r1 / m.dy_um));

    FractalFit out;
    out.r0_um = r0;
    out.r1_um = r1;
    std::vector<double> lr, ls;
    bool any_signal = false;
    // Half-plane of offsets (di > 0, or di == 0 and dj > 0); S is symmetric.
    for (std::ptrdiff_t di = 0; di <= dmax_x; ++di) {
        for (std::ptrdiff_t dj = di == 0 ? 1 : -dmax_y; dj <= dmax_y; ++dj) {
            const double r = std::hypot(double(di) * m.dx_um, double(dj) * m.dy_um);
            if (r < r0 - 1e-12 || r > r1 + 1e-12) continue;
            double acc = 0.0;
            std::size_t cnt = 0;
            const std::size_t y_lo = dj < 0 ? std::size_t(-dj) : 0;
            const std::size_t y_hi = dj > 0 ? m.ny - std::size_t(dj) : m.ny;
            for (std::size_t iy = y_lo; iy < y_hi; ++iy)
                for (std::size_t ix = 0; ix + std::size_t(di) < m.nx; ++ix) {
                    const double d = m.at(ix + std::size_t(di),
                                          std::size_t(std::ptrdiff_t(iy) + dj)) -
                                     m.at(ix, iy);
                    acc += d * d;
                    ++cnt;
                }
            if (cnt == 0) continue;
            const double s = acc / double(cnt);
            if (s > 0.0) {
                any_signal = true;
                lr.push_back(std::log10(r));
                ls.push_back(std::log10(s));
            }
        }
    }
    if (!any_signal) return out;  // ideal plane: slope 0, Sfd exactly 2
    if (lr.size() < 2) throw InsufficientData("fractal_dimension: too few usable lags");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lr.size(); ++i) {
        sx += lr[i];
        sy += ls[i];
        sxx += lr[i] * lr[i];
        sxy += lr[i] * ls[i];
    }
    const double n = double(lr.size());
    const double det = n * sxx - sx * sx;
    if (!(det > 0.0)) throw InsufficientData("fractal_dimension: degenerate lag range");
    out.n_lags = lr.size();
    out.slope = (n * sxy - sx * sy) / det;
    out.Sfd = std::clamp(3.0 - 0.5 * out.slope, 2.0, 3.0);
    return out;
}

}  // namespace gearlab::areal
