#pragma once
// Uniformly sampled rectangular height field. The x axis runs along the face
// width (helix direction), the y axis along the tooth height (profile
// direction); heights are in um. Storage is row-major with x fastest.

#include <cmath>
#include <cstddef>
#include <vector>

#include "../core.hpp"
#include "../profile/profile.hpp"

namespace gearlab::areal {

struct Heightmap {
    std::vector<double> z_um;  // ny rows of nx values, z_um[iy*nx + ix]
    std::size_t nx = 0, ny = 0;
    double dx_um = 0.0, dy_um = 0.0;

    double at(std::size_t ix, std::size_t iy) const { return z_um[iy * nx + ix]; }
    double& at(std::size_t ix, std::size_t iy) { return z_um[iy * nx + ix]; }
    std::size_t samples() const { return nx * ny; }
    double extent_x_um() const { return nx > 0 ? double(nx - 1) * dx_um : 0.0; }
    double extent_y_um() const { return ny > 0 ? double(ny - 1) * dy_um : 0.0; }
    double area_mm2() const { return extent_x_um() * extent_y_um() * 1e-6; }

    void validate() const {
        if (nx < 16 || ny < 16)
            throw InvalidParams("heightmap: need at least 16 samples per axis");
        if (dx_um <= 0.0 || dy_um <= 0.0)
            throw InvalidParams("heightmap: sample steps must be positive");
        if (z_um.size() != nx * ny)
            throw InvalidParams("heightmap: height count does not match the grid");
        for (double z : z_um)
            if (!std::isfinite(z)) throw InvalidParams("heightmap: non-finite height");
    }
};

inline double map_mean(const Heightmap& m) {
    double s = 0.0;
    for (double z : m.z_um) s += z;
    return s / double(m.samples());
}

inline Heightmap mean_removed(const Heightmap& m) {
    m.validate();
    Heightmap out = m;
    const double mu = map_mean(m);
    for (double& z : out.z_um) z -= mu;
    return out;
}

// Single measuring track along the face width (fixed iy).
inline prof::Profile row_trace(const Heightmap& m, std::size_t iy) {
    m.validate();
    if (iy >= m.ny) throw InvalidParams("row_trace: row outside the map");
    prof::Profile p;
    p.dx_um = m.dx_um;
    p.z.assign(m.z_um.begin() + std::ptrdiff_t(iy * m.nx),
               m.z_um.begin() + std::ptrdiff_t((iy + 1) * m.nx));
    return p;
}

// Single measuring track along the tooth height (fixed ix).
inline prof::Profile column_trace(const Heightmap& m, std::size_t ix) {
    m.validate();
    if (ix >= m.nx) throw InvalidParams("column_trace: column outside the map");
    prof::Profile p;
    p.dx_um = m.dy_um;
    p.z.resize(m.ny);
    for (std::size_t iy = 0; iy < m.ny; ++iy) p.z[iy] = m.at(ix, iy);
    return p;
}

}  // namespace gearlab::areal
