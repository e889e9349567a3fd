#pragma once
// Material / void volume parameters from the areal bearing curve.
//
// Definitions used (heights about the mean plane, bearing levels from the
// sample bearing curve):
//   Smmr = mean - min, Smvr = (max - min) - Smmr, both in mm^3/mm^2, so
//   Smmr + Smvr equals the total height St exactly, also in fp arithmetic.
//   Vv(p) = mean over samples of max(0, h(p) - z): void volume per unit area
//   (um) under the bearing level h(p).
//   Sbi = Sq / h(0.05); Sci = (Vv(0.05) - Vv(0.80)) / Sq; Svi = Vv(0.80) / Sq.

#include <algorithm>
#include <cmath>
#include <optional>

#include "../profile/gaussian_filter.hpp"
#include "../profile/material_ratio.hpp"
#include "heightmap.hpp"

namespace gearlab::areal {

// Bearing (material ratio) curve over every sample of the map.
inline prof::MaterialCurve areal_material_curve(const Heightmap& m) {
    m.validate();
    return prof::material_curve(m.z_um);
}

struct VolumeParams {
    double Smmr_mm3_mm2 = 0.0;  // mean material volume
    double Smvr_mm3_mm2 = 0.0;  // mean void volume
    std::optional<double> Sbi;  // surface bearing index, unset when degenerate
    std::optional<double> Sci;  // core fluid retention index
    std::optional<double> Svi;  // valley fluid retention index
};

// Void volume per unit area (um) below the bearing level at ratio p.
inline double void_volume_um(const Heightmap& m, const prof::MaterialCurve& c, double p) {
    const double level = prof::height_at_ratio(c, p);
    double acc = 0.0;
    for (double z : m.z_um)
        if (z < level) acc += level - z;
    return acc / double(m.samples());
}

inline VolumeParams volume_params(const Heightmap& m) {
    m.validate();
    const auto [lo, hi] = std::minmax_element(m.z_um.begin(), m.z_um.end());
    const double mu = map_mean(m);

    VolumeParams out;
    out.Smmr_mm3_mm2 = (mu - *lo) * 1e-3;
    // Realign the pair so material + void reproduces the total height without
    // rounding residue, the same way the filter split does.
    prof::reconcile_split((*hi - *lo) * 1e-3, out.Smmr_mm3_mm2, out.Smvr_mm3_mm2);

    double s2 = 0.0;
    for (double z : m.z_um) s2 += (z - mu) * (z - mu);
    const double sq = std::sqrt(s2 / double(m.samples()));
    if (sq == 0.0) return out;  // flat map: indices undefined

    Heightmap centred = m;
    for (double& z : centred.z_um) z -= mu;
    const auto c = prof::material_curve(centred.z_um);
    const double h05 = prof::height_at_ratio(c, 0.05);
    if (h05 > 0.0) out.Sbi = sq / h05;
    const double vv05 = void_volume_um(centred, c, 0.05);
    const double vv80 = void_volume_um(centred, c, 0.80);
    out.Sci = (vv05 - vv80) / sq;
    out.Svi = vv80 / sq;
    return out;
}

}  // namespace gearlab::areal
