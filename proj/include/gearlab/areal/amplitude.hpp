#pragma once
// Height (moment and extreme) parameters over all samples of a map.

#include <algorithm>
#include <cmath>
#include <optional>

#include "heightmap.hpp"

namespace gearlab::areal {

struct ArealHeightParams {
    double Sa = 0.0;
    double Sq = 0.0;
    double St = 0.0;            // max peak-to-valley
    double Sp = 0.0;            // highest point above the mean plane
    double Sv = 0.0;            // deepest point below the mean plane (positive)
    std::optional<double> Ssk;  // unset when Sq == 0
    std::optional<double> Sku;  // unset when Sq == 0
};

inline ArealHeightParams height_params(const Heightmap& m) {
    m.validate();
    const double mu = map_mean(m);
    double sa = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
    double zmin = m.z_um[0], zmax = m.z_um[0];
    for (double z : m.z_um) {
        const double d = z - mu;
        sa += std::abs(d);
        s2 += d * d;
        s3 += d * d * d;
        s4 += d * d * d * d;
        zmin = std::min(zmin, z);
        zmax = std::max(zmax, z);
    }
    const double n = double(m.samples());
    ArealHeightParams out;
    out.Sa = sa / n;
    out.Sq = std::sqrt(s2 / n);
    out.St = zmax - zmin;
    out.Sp = zmax - mu;
    out.Sv = mu - zmin;
    if (out.Sq > 0.0) {
        out.Ssk = (s3 / n) / (out.Sq * out.Sq * out.Sq);
        out.Sku = (s4 / n) / ((s2 / n) * (s2 / n));
    }
    return out;
}

}  // namespace gearlab::areal
