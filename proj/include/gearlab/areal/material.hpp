#pragma once
// Areal material-curve families: every sample of the map flattened into one
// ordinate population, then run through the trace machinery (secant core
// family, two-line probability family, three-parameter S-shape fit). A flat
// map yields the zero core family; the probability and S-shape families need
// a sloped curve and stay unset there.

#include <optional>

#include "../profile/material_ratio.hpp"
#include "volume.hpp"

namespace gearlab::areal {

struct ArealMaterialParams {
    prof::CoreParams core;                        // Sk, Spk, Svk, Sr1, Sr2
    std::optional<prof::ProbabilityParams> prob;  // Spq, Svq, Smq
    std::optional<prof::SShapeFit> sshape;        // dp1, ypp
};

inline ArealMaterialParams areal_material_params(const Heightmap& m) {
    const auto c = areal_material_curve(m);
    ArealMaterialParams out;
    out.core = prof::core_params(c);
    if (c.height_um.front() > c.height_um.back()) {
        out.prob = prof::probability_params(c);
        out.sshape = prof::sshape_fit(c);
    }
    return out;
}

}  // namespace gearlab::areal
