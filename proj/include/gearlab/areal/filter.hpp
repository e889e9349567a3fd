#pragma once
// Separable areal Gaussian filter: the profile-metrology weight function is
// applied along every x row, then along every y column of the result. Edge
// zones renormalise over the truncated support exactly as the 1-d filter
// does, and the waviness/roughness pair is realigned per sample so it sums
// back to the input wherever a representable pair exists.

#include <cstddef>
#include <vector>

#include "../profile/gaussian_filter.hpp"
#include "heightmap.hpp"

namespace gearlab::areal {

struct ArealFilterResult {
    Heightmap waviness;
    Heightmap roughness;
    double edge_zone_um = 0.0;  // width of the renormalised border band
    double cutoff_mm = 0.0;
};

inline ArealFilterResult gaussian_filter_areal(const Heightmap& m, double cutoff_mm) {
    m.validate();
    if (cutoff_mm <= 0.0) throw InvalidParams("gaussian_filter_areal: cutoff must be positive");
    const double lc_um = 1000.0 * cutoff_mm;
    if (m.extent_x_um() < 2.0 * lc_um || m.extent_y_um() < 2.0 * lc_um)
        throw FilterLengthError("gaussian_filter_areal: map extent shorter than twice the cutoff");

    // One smoothing pass along a line of `count` samples with stride `stride`.
    auto smooth_line = [](const std::vector<double>& src, std::vector<double>& dst,
                          std::size_t first, std::size_t count, std::size_t stride,
                          const std::vector<double>& w) {
        const std::ptrdiff_t mm = std::ptrdiff_t(w.size() / 2);
        const std::ptrdiff_t n = std::ptrdiff_t(count);
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            const std::ptrdiff_t j0 = std::max<std::ptrdiff_t>(-mm, -i);
            const std::ptrdiff_t j1 = std::min<std::ptrdiff_t>(mm, n - 1 - i);
            double acc = 0.0, wsum = 0.0;
            for (std::ptrdiff_t j = j0; j <= j1; ++j) {
                const double wj = w[std::size_t(j + mm)];
                acc += wj * src[first + std::size_t(i + j) * stride];
                wsum += wj;
            }
            dst[first + std::size_t(i) * stride] = acc / wsum;
        }
    };

    const std::vector<double> wx = prof::gaussian_weights(lc_um, m.dx_um);
    const std::vector<double> wy = prof::gaussian_weights(lc_um, m.dy_um);

    ArealFilterResult out;
    out.cutoff_mm = cutoff_mm;
    out.edge_zone_um = 0.5 * lc_um;
    out.waviness = m;
    out.roughness = m;
    std::vector<double> stage(m.z_um.size());
    for (std::size_t iy = 0; iy < m.ny; ++iy)
        smooth_line(m.z_um, stage, iy * m.nx, m.nx, 1, wx);
    for (std::size_t ix = 0; ix < m.nx; ++ix)
        smooth_line(stage, out.waviness.z_um, ix, m.ny, m.nx, wy);
    for (std::size_t k = 0; k < m.z_um.size(); ++k)
        prof::reconcile_split(m.z_um[k], out.waviness.z_um[k], out.roughness.z_um[k]);
    return out;
}

}  // namespace gearlab::areal
