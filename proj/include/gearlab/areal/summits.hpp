#pragma once
// Surface summits: grid points strictly higher than all 8 neighbours, border
// ring excluded. Curvatures at a summit come from 3-point second differences
// and are positive there (1/um).

#include <cmath>
#include <cstddef>
#include <vector>

#include "heightmap.hpp"

namespace gearlab::areal {

struct Summit {
    std::size_t ix = 0, iy = 0;
    double height_um = 0.0;  // above the mean plane
    double curv_x = 0.0, curv_y = 0.0, curv_mean = 0.0;
};

struct SummitParams {
    std::vector<Summit> summits;
    double Sds_per_mm2 = 0.0;  // summit density
    double Sqsum_um = 0.0;     // rms summit height
    double Ssc = 0.0;          // mean summit curvature, 1/um
    double Sscx = 0.0;         // mean along the face width
    double Sscy = 0.0;         // mean along the tooth height
};

inline std::vector<Summit> find_summits(const Heightmap& m) {
    m.validate();
    const double mu = map_mean(m);
    std::vector<Summit> out;
    for (std::size_t iy = 1; iy + 1 < m.ny; ++iy) {
        for (std::size_t ix = 1; ix + 1 < m.nx; ++ix) {
            const double z = m.at(ix, iy);
            bool top = true;
            for (int dy = -1; dy <= 1 && top; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    if (z <= m.at(std::size_t(std::ptrdiff_t(ix) + dx),
                                  std::size_t(std::ptrdiff_t(iy) + dy))) {
                        top = false;
                        break;
                    }
                }
            if (!top) continue;
            Summit s;
            s.ix = ix;
            s.iy = iy;
            s.height_um = z - mu;
            s.curv_x = -(m.at(ix + 1, iy) - 2.0 * z + m.at(ix - 1, iy)) / (m.dx_um * m.dx_um);
            s.curv_y = -(m.at(ix, iy + 1) - 2.0 * z + m.at(ix, iy - 1)) / (m.dy_um * m.dy_um);
            s.curv_mean = 0.5 * (s.curv_x + s.curv_y);
            out.push_back(s);
        }
    }
    return out;
}

inline SummitParams summit_params(const Heightmap& m) {
    SummitParams out;
    out.summits = find_summits(m);
    if (out.summits.empty()) throw NoFeatures("summit_params: map has no summits");
    double s2 = 0.0, sc = 0.0, sx = 0.0, sy = 0.0;
    for (const Summit& s : out.summits) {
        s2 += s.height_um * s.height_um;
        sc += s.curv_mean;
        sx += s.curv_x;
        sy += s.curv_y;
    }
    const double n = double(out.summits.size());
    out.Sds_per_mm2 = n / m.area_mm2();
    out.Sqsum_um = std::sqrt(s2 / n);
    out.Ssc = sc / n;
    out.Sscx = sx / n;
    out.Sscy = sy / n;
    return out;
}

}  // namespace gearlab::areal
