#pragma once
// Slope and area parameters: gradients by central differences (one-sided on
// the border), developed interfacial area by exact triangulation of the cells.

#include <cmath>
#include <cstddef>

#include "heightmap.hpp"

namespace gearlab::areal {

struct HybridParams {
    double Sdq = 0.0;      // rms of |grad z| (dimensionless, um/um)
    double Sdax = 0.0;     // mean |dz/dx|, along the face width
    double Sday = 0.0;     // mean |dz/dy|, along the tooth height
    double Sdr_pct = 0.0;  // (true area / projected area - 1) * 100
};

inline HybridParams hybrid_params(const Heightmap& m) {
    m.validate();
    auto gx = [&](std::size_t ix, std::size_t iy) {
        if (ix == 0) return (m.at(1, iy) - m.at(0, iy)) / m.dx_um;
        if (ix + 1 == m.nx) return (m.at(ix, iy) - m.at(ix - 1, iy)) / m.dx_um;
        return (m.at(ix + 1, iy) - m.at(ix - 1, iy)) / (2.0 * m.dx_um);
    };
    auto gy = [&](std::size_t ix, std::size_t iy) {
        if (iy == 0) return (m.at(ix, 1) - m.at(ix, 0)) / m.dy_um;
        if (iy + 1 == m.ny) return (m.at(ix, iy) - m.at(ix, iy - 1)) / m.dy_um;
        return (m.at(ix, iy + 1) - m.at(ix, iy - 1)) / (2.0 * m.dy_um);
    };

    HybridParams out;
    double s2 = 0.0, sx = 0.0, sy = 0.0;
    for (std::size_t iy = 0; iy < m.ny; ++iy)
        for (std::size_t ix = 0; ix < m.nx; ++ix) {
            const double ax = gx(ix, iy), ay = gy(ix, iy);
            s2 += ax * ax + ay * ay;
            sx += std::abs(ax);
            sy += std::abs(ay);
        }
    const double n = double(m.samples());
    out.Sdq = std::sqrt(s2 / n);
    out.Sdax = sx / n;
    out.Sday = sy / n;

    // True area: each dx*dy cell split into two triangles on its corners.
    double area = 0.0;
    for (std::size_t iy = 0; iy + 1 < m.ny; ++iy)
        for (std::size_t ix = 0; ix + 1 < m.nx; ++ix) {
            const double z00 = m.at(ix, iy), z10 = m.at(ix + 1, iy);
            const double z01 = m.at(ix, iy + 1), z11 = m.at(ix + 1, iy + 1);
            auto tri = [&](double za, double zb, double zc) {
                // corners a=(0,0), b=(dx,0), c=(0,dy) with heights za..zc
                const double ux = m.dx_um, uz = zb - za;
                const double vy = m.dy_um, vz = zc - za;
                const double cxv = -uz * vy, cyv = -ux * vz, czv = ux * vy;
                return 0.5 * std::sqrt(cxv * cxv + cyv * cyv + czv * czv);
            };
            area += tri(z00, z10, z01) + tri(z11, z01, z10);
        }
    const double projected = m.extent_x_um() * m.extent_y_um();
    out.Sdr_pct = (area / projected - 1.0) * 100.0;
    return out;
}

}  // namespace gearlab::areal
