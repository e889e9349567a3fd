#pragma once
// Two-dimensional periodogram: angular power distribution (1-degree sectors)
// and per-axis collapsed spectra with their cumulated-power knee wavelengths.
//
// Conventions match the trace spectra: rectangular window, mean removed, bin
// power |Z|^2/N^2 summed over every non-DC bin equals the population
// variance Sq^2 exactly. The x collapse sums each |x-frequency| over all y
// frequencies (bins with zero x-frequency belong to no x wavelength and are
// left out), and symmetrically for y. The angular plot is restricted to the
// inscribed frequency disc so that every sector sees the same bin density.

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "../detail/fft.hpp"
#include "../profile/spectral.hpp"
#include "heightmap.hpp"

namespace gearlab::areal {

struct ArealSpectrum {
    prof::SpectrumSeries angular;      // angle_deg [0, 180) vs power um^2
    prof::SpectrumSeries power_x;      // wavelength along x, ascending
    prof::SpectrumSeries cumulated_x;
    prof::SpectrumSeries power_y;
    prof::SpectrumSeries cumulated_y;
    std::optional<double> knee_x_um;   // cumulated-power knee along the width
    std::optional<double> knee_y_um;   // cumulated-power knee along the height
    double total_power_um2 = 0.0;      // == Sq^2
};

inline ArealSpectrum areal_power_spectrum(const Heightmap& m) {
    m.validate();
    if (m.nx < 32 || m.ny < 32)
        throw InsufficientData("areal_power_spectrum: need at least 32x32 samples");
    const std::size_t nx = m.nx, ny = m.ny;
    const double mu = map_mean(m);
    std::vector<double> z0(nx * ny);
    for (std::size_t k = 0; k < z0.size(); ++k) z0[k] = m.z_um[k] - mu;
    const auto spec = detail::fft_r2c_2d(z0, nx, ny);
    const std::size_t nxh = nx / 2 + 1;

    ArealSpectrum out;
    out.angular.x_label = "angle_deg";
    out.angular.value_label = "power_um2";
    out.angular.x.resize(180);
    out.angular.value.assign(180, 0.0);
    for (std::size_t a = 0; a < 180; ++a) out.angular.x[a] = double(a);

    std::vector<double> px(nx / 2 + 1, 0.0), py(ny / 2 + 1, 0.0);
    const double n2 = double(nx) * double(ny) * double(nx) * double(ny);
    const double f_disc = std::min(0.5 / m.dx_um, 0.5 / m.dy_um);
    for (std::size_t ky = 0; ky < ny; ++ky) {
        for (std::size_t kx = 0; kx < nx; ++kx) {
            if (kx == 0 && ky == 0) continue;
            double p;
            if (kx < nxh) {
                p = std::norm(spec[ky * nxh + kx]);
            } else {
                const std::size_t cy = (ny - ky) % ny;
                p = std::norm(spec[cy * nxh + (nx - kx)]);
            }
            p /= n2;
            out.total_power_um2 += p;

            const std::ptrdiff_t sx =
                kx <= nx / 2 ? std::ptrdiff_t(kx) : std::ptrdiff_t(kx) - std::ptrdiff_t(nx);
            const std::ptrdiff_t sy =
                ky <= ny / 2 ? std::ptrdiff_t(ky) : std::ptrdiff_t(ky) - std::ptrdiff_t(ny);
            const double fx = double(sx) / (double(nx) * m.dx_um);
            const double fy = double(sy) / (double(ny) * m.dy_um);
            // The angular distribution only counts bins inside the frequency
            // disc inscribed in both Nyquist limits; the square's corners would
            // otherwise gift the diagonal sectors extra bins and an isotropic
            // surface would not plot flat.
            if (std::hypot(fx, fy) <= f_disc) {
                double ang = std::atan2(fy, fx);
                if (ang < 0.0) ang += pi;
                if (ang >= pi) ang -= pi;
                std::size_t bin = std::size_t(rad2deg(ang));
                if (bin >= 180) bin = 179;
                out.angular.value[bin] += p;
            }

            const std::size_t ax = std::size_t(sx >= 0 ? sx : -sx);
            const std::size_t ay = std::size_t(sy >= 0 ? sy : -sy);
            if (ax > 0) px[ax] += p;
            if (ay > 0) py[ay] += p;
        }
    }

    auto collapse = [](const std::vector<double>& pk, std::size_t n, double d_um,
                       prof::SpectrumSeries& power, prof::SpectrumSeries& cum) {
        power.x_label = cum.x_label = "wavelength_um";
        power.value_label = "power_um2";
        cum.value_label = "cumulative_power_um2";
        double acc = 0.0;
        for (std::size_t k = n / 2; k >= 1; --k) {
            const double lambda = double(n) * d_um / double(k);
            power.x.push_back(lambda);
            power.value.push_back(pk[k]);
            acc += pk[k];
            cum.x.push_back(lambda);
            cum.value.push_back(acc);
        }
    };
    collapse(px, nx, m.dx_um, out.power_x, out.cumulated_x);
    collapse(py, ny, m.dy_um, out.power_y, out.cumulated_y);
    out.knee_x_um = prof::spectrum_knee(out.cumulated_x);
    out.knee_y_um = prof::spectrum_knee(out.cumulated_y);
    return out;
}

}  // namespace gearlab::areal
