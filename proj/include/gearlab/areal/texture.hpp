#pragma once
// Spatial texture parameters from the areal autocorrelation: decay lengths
// per direction, correlation length Sal (fastest decay), texture aspect
// ratio Str (fastest/slowest), texture direction Std (slowest decay = lay).
// Directions whose correlation never falls below the threshold inside the
// available lag window are floored at that window's radius and flagged.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "../detail/fft.hpp"
#include "../profile/profile.hpp"
#include "heightmap.hpp"

namespace gearlab::areal {

// Normalised linear (zero-padded) autocorrelation over lags
// lx in [0, nx/2] * dx, ly in [-ny/2, ny/2] * dy; acf(0,0) = 1.
struct ArealAcf {
    std::vector<double> value;  // (2*Ly+1) rows of (Lx+1), row ly = -Ly first
    std::size_t Lx = 0, Ly = 0;
    double dx_um = 0.0, dy_um = 0.0;

    double at(std::size_t lx, std::ptrdiff_t ly) const {
        return value[std::size_t(ly + std::ptrdiff_t(Ly)) * (Lx + 1) + lx];
    }
    // Bilinear interpolation at a metric lag; uses acf(-v) = acf(v).
    double interp(double x_um, double y_um) const {
        if (x_um < 0.0) {
            x_um = -x_um;
            y_um = -y_um;
        }
        const double fx = std::min(x_um / dx_um, double(Lx) - 1e-12);
        const double fy = std::clamp(y_um / dy_um, -(double(Ly) - 1e-12), double(Ly) - 1e-12);
        const std::size_t ix = std::size_t(fx);
        const std::ptrdiff_t iy = std::ptrdiff_t(std::floor(fy));
        const double tx = fx - double(ix), ty = fy - double(iy);
        const double a = at(ix, iy), b = at(ix + 1, iy);
        const double c = at(ix, iy + 1), d = at(ix + 1, iy + 1);
        return (1.0 - ty) * ((1.0 - tx) * a + tx * b) + ty * ((1.0 - tx) * c + tx * d);
    }
};

inline ArealAcf areal_autocorrelation(const Heightmap& m) {
    m.validate();
    const double mu = map_mean(m);
    const std::size_t px = detail::next_pow2(2 * m.nx);
    const std::size_t py = detail::next_pow2(2 * m.ny);
    std::vector<double> padded(px * py, 0.0);
    for (std::size_t iy = 0; iy < m.ny; ++iy)
        for (std::size_t ix = 0; ix < m.nx; ++ix)
            padded[iy * px + ix] = m.at(ix, iy) - mu;
    auto spec = detail::fft_r2c_2d(padded, px, py);
    for (auto& c : spec) c = std::norm(c);
    auto corr = detail::fft_c2r_2d(spec, px, py);
    const double c0 = corr[0];
    if (c0 <= 0.0) throw DegenerateCurve("areal_autocorrelation: flat map has no correlation");

    ArealAcf out;
    out.Lx = m.nx / 2;
    out.Ly = m.ny / 2;
    out.dx_um = m.dx_um;
    out.dy_um = m.dy_um;
    out.value.resize((2 * out.Ly + 1) * (out.Lx + 1));
    for (std::ptrdiff_t ly = -std::ptrdiff_t(out.Ly); ly <= std::ptrdiff_t(out.Ly); ++ly) {
        const std::size_t row = ly >= 0 ? std::size_t(ly) : py - std::size_t(-ly);
        for (std::size_t lx = 0; lx <= out.Lx; ++lx)
            out.value[std::size_t(ly + std::ptrdiff_t(out.Ly)) * (out.Lx + 1) + lx] =
                corr[row * px + lx] / c0;
    }
    return out;
}

struct TextureParams {
    double Sal_um = 0.0;           // fastest directional decay of the ACF
    double slowest_decay_um = 0.0;
    double Str = 0.0;              // Sal / slowest
    double Std_deg = 0.0;          // direction of slowest decay, [0, 180)
    double isotropy_pct = 0.0;     // 100 * Str
    double threshold = 0.2;
    std::size_t floored_directions = 0;  // directions where the lag window ran out
    bool decay_reached_all = true;
    prof::SpectrumSeries decay_by_angle;  // angle_deg vs decay length um
};

inline TextureParams texture_params(const Heightmap& m, double threshold = 0.2) {
    if (!(threshold > 0.0 && threshold < 1.0))
        throw InvalidParams("texture_params: threshold must be inside (0, 1)");
    const ArealAcf acf = areal_autocorrelation(m);

    TextureParams out;
    out.threshold = threshold;
    out.decay_by_angle.x_label = "angle_deg";
    out.decay_by_angle.value_label = "decay_um";
    const double step = 0.5 * std::min(m.dx_um, m.dy_um);
    // Every direction marches to the same radius (the lag window inscribed in
    // both axes), which is also the floor for directions that never decay.
    const double rmax = std::min(double(acf.Lx) * acf.dx_um, double(acf.Ly) * acf.dy_um);
    double best = -1.0, worst = -1.0, worst_end = 2.0;
    for (int deg = 0; deg < 180; ++deg) {
        const double cs = std::cos(deg2rad(double(deg))), sn = std::sin(deg2rad(double(deg)));
        double decay = rmax;
        bool reached = false;
        double r_prev = 0.0, v_prev = 1.0, v_end = 1.0;
        for (double r = step; r <= rmax; r += step) {
            const double v = acf.interp(r * cs, r * sn);
            if (v < threshold) {
                decay = r_prev + (v_prev - threshold) / (v_prev - v) * (r - r_prev);
                reached = true;
                break;
            }
            r_prev = r;
            v_prev = v;
            v_end = v;
        }
        if (reached) {
            v_end = threshold;
        } else {
            ++out.floored_directions;
            out.decay_reached_all = false;
        }
        out.decay_by_angle.x.push_back(double(deg));
        out.decay_by_angle.value.push_back(decay);
        if (best < 0.0 || decay < best) best = decay;
        // Slowest decay; floored directions tie at the window radius, so the
        // one holding the most correlation there wins (the actual lay).
        if (decay > worst || (decay == worst && v_end > worst_end)) {
            worst = decay;
            worst_end = v_end;
            out.Std_deg = double(deg);
        }
    }
    out.Sal_um = best;
    out.slowest_decay_um = worst;
    out.Str = worst > 0.0 ? best / worst : 0.0;
    out.isotropy_pct = 100.0 * out.Str;
    return out;
}

}  // namespace gearlab::areal
